#include "mcdeform/matrix.hpp"

#include <omp.h>

#include <utility>

#include "mcdeform/error.hpp"

namespace mcdeform {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) m.set_col(c, columns[c]);
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<Vector> Matrix::columns() const {
    std::vector<Vector> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(col(c));
    return out;
}

void Matrix::set_col(std::size_t c, const Vector& v) {
    if (v.size() != rows_) throw Error(ErrorCode::InvalidInput, "column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw Error(ErrorCode::InvalidInput, "matrix-vector shape mismatch");
    Vector out = zeros(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c] == 0) continue;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Scalar& a = (*this)(r, c);
            if (a != 0) out[r] += a * v[c];
        }
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw Error(ErrorCode::InvalidInput, "matrix product shape mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Scalar& b = other(k, j);
                if (b != 0) out(i, j) += a * b;
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::InvalidInput, "matrix sum shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const { return *this + other.scaled(-1); }

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= c;
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

Matrix Matrix::select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    Matrix out(row_idx.size(), col_idx.size());
    for (std::size_t r = 0; r < row_idx.size(); ++r)
        for (std::size_t c = 0; c < col_idx.size(); ++c) out(r, c) = (*this)(row_idx[r], col_idx[c]);
    return out;
}

Matrix Matrix::hstack(const Matrix& right) const {
    if (rows_ != right.rows_) throw Error(ErrorCode::InvalidInput, "hstack row mismatch");
    Matrix out(rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < right.cols_; ++c) out(r, cols_ + c) = right(r, c);
    }
    return out;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

namespace {

// Finds the pivot row for column c at or below row r, swaps it into place and
// normalizes it. Returns false when the column has no pivot.
bool prepare_pivot(Matrix& m, std::size_t r, std::size_t c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) return false;
    if (p != r)
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    return true;
}

void eliminate_row(Matrix& m, std::size_t i, std::size_t r, std::size_t c) {
    if (i == r || m(i, c) == 0) return;
    const Scalar f = m(i, c);
    for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
}

constexpr std::size_t kParallelThreshold = 48 * 48;

}  // namespace

RowEchelon rref_serial(Matrix m) {
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        if (!prepare_pivot(m, r, c)) continue;
        for (std::size_t i = 0; i < m.rows(); ++i) eliminate_row(m, i, r, c);
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

RowEchelon rref_parallel(Matrix m) {
    RowEchelon out;
    std::size_t r = 0;
    const auto rows = static_cast<std::ptrdiff_t>(m.rows());
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        if (!prepare_pivot(m, r, c)) continue;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < rows; ++i) eliminate_row(m, static_cast<std::size_t>(i), r, c);
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

RowEchelon rref(Matrix m) {
    if (m.rows() * m.cols() >= kParallelThreshold && omp_get_max_threads() > 1) return rref_parallel(std::move(m));
    return rref_serial(std::move(m));
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel_basis(const Matrix& m) {
    const RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v = zeros(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
        basis.push_back(std::move(v));
    }
    return Matrix::from_columns(m.cols(), basis);
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw Error(ErrorCode::InvalidInput, "solve: right-hand side length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    const RowEchelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vector x = zeros(m.cols());
    for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.reduced(k, m.cols());
    return x;
}

std::vector<std::size_t> independent_columns(const Matrix& m) { return rref(m).pivots; }

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const RowEchelon e = rref(m.hstack(Matrix::identity(n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
        throw Error(ErrorCode::InvalidInput, "matrix is singular");
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
    return inv;
}

std::vector<std::size_t> complement_indices(const Matrix& q) {
    const std::size_t n = q.rows();
    const RowEchelon e = rref(q.hstack(Matrix::identity(n)));
    std::vector<std::size_t> out;
    for (auto p : e.pivots)
        if (p >= q.cols()) out.push_back(p - q.cols());
    return out;
}

}  // namespace mcdeform
