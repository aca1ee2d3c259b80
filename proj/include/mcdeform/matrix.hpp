#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mcdeform/scalar.hpp"

namespace mcdeform {

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    static Matrix identity(std::size_t n);
    /// Columns must all have length `rows`.
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector col(std::size_t c) const;
    std::vector<Vector> columns() const;
    void set_col(std::size_t c, const Vector& v);

    Vector apply(const Vector& v) const;
    Matrix operator*(const Matrix& other) const;
    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix scaled(const Scalar& c) const;
    Matrix transpose() const;

    /// Rows and columns selected by index lists, in the given order.
    Matrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
    Matrix hstack(const Matrix& right) const;

    bool is_zero() const;
    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

struct RowEchelon {
    Matrix reduced;                    // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of row k, ascending
};

/// Gauss-Jordan elimination, serial reference kernel.
RowEchelon rref_serial(Matrix m);
/// Same pivot sequence as rref_serial; row eliminations for each pivot run
/// under OpenMP. Results are identical to the serial kernel.
RowEchelon rref_parallel(Matrix m);
/// Dispatches to the parallel kernel above a size threshold.
RowEchelon rref(Matrix m);

std::size_t rank(const Matrix& m);

/// Basis of the null space as columns (cols x nullity). One vector per free
/// column of the reduced form, with that free variable set to 1.
Matrix kernel_basis(const Matrix& m);

/// A particular solution of m x = b (free variables zero), or nullopt.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// Indices of the columns of m forming a basis of its column space.
std::vector<std::size_t> independent_columns(const Matrix& m);

/// Inverse of a square matrix; throws Error(InvalidInput) if singular.
Matrix inverse(const Matrix& m);

/// For q (n x k) of full column rank, standard basis indices e_j that extend
/// the columns of q to a basis of K^n.
std::vector<std::size_t> complement_indices(const Matrix& q);

}  // namespace mcdeform
