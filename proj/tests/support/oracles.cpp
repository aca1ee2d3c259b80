#include "oracles.hpp"

#include <numeric>

namespace oracle {

using mcdeform::GradedSpace;

std::size_t rank(const Matrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }
    std::size_t rk = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t p = rk;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rk]);
        for (std::size_t r = rk + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) a[r][k] = (a[rk][c] * a[r][k] - a[r][c] * a[rk][k]) / prev;
            a[r][c] = 0;
        }
        prev = a[rk][c];
        ++rk;
    }
    return rk;
}

bool solvable(const Matrix& a, const Vector& b) {
    Matrix ab(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) ab(r, c) = a(r, c);
        ab(r, a.cols()) = b[r];
    }
    return oracle::rank(ab) == oracle::rank(a);
}

std::vector<std::vector<Vector>> bracket_table(const Dgla& l) {
    const std::size_t n = l.dim();
    std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n, Vector(n, Scalar(0))));
    for (const auto& e : l.entries()) {
        t[e.left][e.right] = e.value;
        if (e.left != e.right) {
            const int s = l.basis_degree(e.left) * l.basis_degree(e.right);
            Vector v = e.value;
            for (auto& x : v) x = (s % 2 == 0) ? Scalar(-x) : x;
            t[e.right][e.left] = v;
        }
    }
    return t;
}

namespace {

struct Ops {
    const Dgla& l;
    std::vector<std::vector<Vector>> table;
    std::size_t n;

    Vector zero() const { return Vector(n, Scalar(0)); }
    Vector d(const Vector& v) const {
        Vector out = zero();
        for (std::size_t c = 0; c < n; ++c)
            if (v[c] != 0)
                for (std::size_t r = 0; r < n; ++r) out[r] += l.differential()(r, c) * v[c];
        return out;
    }
    Vector br(const Vector& u, const Vector& v) const {
        Vector out = zero();
        for (std::size_t i = 0; i < n; ++i) {
            if (u[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (v[j] == 0) continue;
                const Scalar c = u[i] * v[j];
                for (std::size_t r = 0; r < n; ++r) out[r] += c * table[i][j][r];
            }
        }
        return out;
    }
    Vector e(std::size_t i) const {
        Vector v = zero();
        v[i] = 1;
        return v;
    }
};

Vector plus(Vector a, const Vector& b, const Scalar& c = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
    return a;
}

bool nonzero(const Vector& v) {
    for (const auto& x : v)
        if (x != 0) return true;
    return false;
}

}  // namespace

std::string first_axiom_failure(const Dgla& l) {
    Ops o{l, bracket_table(l), l.dim()};
    const std::size_t n = o.n;
    auto deg = [&](std::size_t i) { return l.basis_degree(i); };
    const auto& d = l.differential();
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r)
            if (d(r, c) != 0 && deg(r) != deg(c) + 1) return "differential-degree";
    for (std::size_t i = 0; i < n; ++i)
        if (nonzero(o.d(o.d(o.e(i))))) return "d-squared";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r)
                if (o.table[i][j][r] != 0 && deg(r) != deg(i) + deg(j)) return "bracket-degree";
    for (std::size_t i = 0; i < n; ++i)
        if (deg(i) % 2 == 0 && nonzero(o.table[i][i])) return "antisymmetry";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Scalar s = (deg(i) % 2 == 0) ? 1 : -1;
            Vector lhs = o.d(o.table[i][j]);
            Vector rhs = plus(o.br(o.d(o.e(i)), o.e(j)), o.br(o.e(i), o.d(o.e(j))), s);
            if (lhs != rhs) return "leibniz";
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const Scalar s = ((deg(a) * deg(b)) % 2 == 0) ? 1 : -1;
                Vector lhs = o.br(o.e(a), o.table[b][c]);
                Vector rhs = plus(o.br(o.table[a][b], o.e(c)), o.br(o.e(b), o.table[a][c]), s);
                if (lhs != rhs) return "jacobi";
            }
    return "";
}

std::vector<std::size_t> cohomology_dims(const GradedSpace& s, const Matrix& d) {
    std::vector<std::size_t> out;
    auto block = [&](int i) {
        const std::size_t rs = s.in_window(i + 1) ? s.dim(i + 1) : 0;
        const std::size_t cs = s.in_window(i) ? s.dim(i) : 0;
        Matrix b(rs, cs);
        for (std::size_t r = 0; r < rs; ++r)
            for (std::size_t c = 0; c < cs; ++c) b(r, c) = d(s.offset(i + 1) + r, s.offset(i) + c);
        return b;
    };
    for (int i = s.dmin(); i <= s.dmax(); ++i) out.push_back(s.dim(i) - oracle::rank(block(i)) - oracle::rank(block(i - 1)));
    return out;
}

Scalar Rng::scalar(int bound, bool fractions) {
    const int p = integer(-bound, bound);
    const int q = fractions ? integer(1, 3) : 1;
    Scalar s(p, q);
    s.canonicalize();
    return s;
}

Scalar Rng::nonzero(int bound) {
    Scalar s;
    do s = scalar(bound); while (s == 0);
    return s;
}

Vector Rng::homogeneous(const GradedSpace& s, int deg, int bound) {
    Vector v(s.total_dim(), Scalar(0));
    if (!s.in_window(deg)) return v;
    for (std::size_t k = 0; k < s.dim(deg); ++k) v[s.offset(deg) + k] = scalar(bound);
    return v;
}

Matrix Rng::invertible(std::size_t n) {
    Matrix lo = Matrix::identity(n), up = Matrix::identity(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            if (r > c) lo(r, c) = scalar(2, false);
            if (r < c) up(r, c) = scalar(2, false);
        }
    return lo * up;
}

}  // namespace oracle
