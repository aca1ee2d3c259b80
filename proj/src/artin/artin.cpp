#include "mcdeform/artin.hpp"

#include "mcdeform/error.hpp"

namespace mcdeform {

namespace {

Scalar koszul(int p, int q) { return ((p * q) % 2 == 0) ? Scalar(1) : Scalar(-1); }

// Column basis of the span of the given vectors.
Matrix span_basis(std::size_t n, const std::vector<Vector>& vs) {
    if (vs.empty()) return Matrix(n, 0);
    const Matrix m = Matrix::from_columns(n, vs);
    std::vector<Vector> cols;
    for (auto c : independent_columns(m)) cols.push_back(vs[c]);
    return Matrix::from_columns(n, cols);
}

}  // namespace

NilpotentAlgebra::NilpotentAlgebra(std::string name, SpacePtr space, Matrix differential,
                                   std::vector<Vector> products)
    : name_(std::move(name)), space_(std::move(space)), d_(std::move(differential)), products_(std::move(products)) {
    const std::size_t n = dim();
    if (d_.rows() != n || d_.cols() != n)
        throw Error(ErrorCode::InvalidInput, "algebra '" + name_ + "': differential shape does not match basis");
    if (products_.size() != n * n)
        throw Error(ErrorCode::InvalidInput, "algebra '" + name_ + "': product table must have dim² entries");
    for (const auto& p : products_)
        if (p.size() != n) throw Error(ErrorCode::InvalidInput, "algebra '" + name_ + "': product of wrong length");

    // m^1 = m, m^{k+1} = m^k · m, until zero or no progress
    Matrix current = Matrix::identity(n);
    for (unsigned k = 1; k <= n + 1; ++k) {
        if (current.cols() == 0) {
            nu_ = k;
            break;
        }
        powers_.push_back(current);
        std::vector<Vector> next;
        for (std::size_t c = 0; c < current.cols(); ++c)
            for (std::size_t j = 0; j < n; ++j) {
                Vector v = multiply(current.col(c), unit(n, j));
                if (!is_zero(v)) next.push_back(std::move(v));
            }
        Matrix nb = span_basis(n, next);
        if (nb.cols() == current.cols()) break;  // stalled: not nilpotent
        current = std::move(nb);
    }
    if (n == 0) nu_ = 1;
    levels_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (unsigned k = 1; k <= powers_.size(); ++k)
            if (solve(powers_[k - 1], unit(n, i))) levels_[i] = k;
}

Vector NilpotentAlgebra::multiply(const Vector& a, const Vector& b) const {
    const std::size_t n = dim();
    Vector out = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (b[j] != 0) axpy(out, a[i] * b[j], products_[i * n + j]);
    }
    return out;
}

bool NilpotentAlgebra::is_artin() const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (degree(i) != 0) return false;
    return d_.is_zero();
}

const Matrix& NilpotentAlgebra::power(unsigned k) const {
    static const Matrix empty;
    if (k == 0 || k > powers_.size()) return empty;
    return powers_[k - 1];
}

ValidationReport validate_artin(const NilpotentAlgebra& A) {
    ValidationReport out;
    const auto& S = *A.space();
    const std::size_t n = A.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector& p = A.basis_product(i, j);
            if (!S.is_homogeneous_of(p, A.degree(i) + A.degree(j)))
                out.add("product-degree", {S.label(i), S.label(j)}, S.label(i) + "·" + S.label(j) + " = " + S.format(p));
            if (j > i) {
                Vector r = p;
                axpy(r, -koszul(A.degree(i), A.degree(j)), A.basis_product(j, i));
                if (!is_zero(r))
                    out.add("commutativity", {S.label(i), S.label(j)}, "a·b - (-1)^{|a||b|} b·a = " + S.format(r));
            }
            for (std::size_t k = 0; k < n; ++k) {
                Vector r = A.multiply(p, unit(n, k));
                axpy(r, Scalar(-1), A.multiply(unit(n, i), A.basis_product(j, k)));
                if (!is_zero(r))
                    out.add("associativity", {S.label(i), S.label(j), S.label(k)}, "(ab)c - a(bc) = " + S.format(r));
            }
        }
    if (!A.nilpotency_index())
        out.add("nilpotency", {}, "the powers of the maximal ideal stop decreasing before reaching zero");
    const Matrix& d = A.differential();
    for (std::size_t i = 0; i < n; ++i) {
        const Vector di = d.col(i);
        if (!S.is_homogeneous_of(di, A.degree(i) + 1))
            out.add("differential-degree", {S.label(i)}, "d(" + S.label(i) + ") = " + S.format(di));
        if (!is_zero(d.apply(di))) out.add("d-squared", {S.label(i)}, "d(d(" + S.label(i) + ")) ≠ 0");
        for (std::size_t j = 0; j < n; ++j) {
            Vector r = d.apply(A.basis_product(i, j));
            axpy(r, Scalar(-1), A.multiply(di, unit(n, j)));
            axpy(r, -koszul(A.degree(i), 1), A.multiply(unit(n, i), d.col(j)));
            if (!is_zero(r))
                out.add("leibniz", {S.label(i), S.label(j)}, "d(ab) - (da)b - (-1)^{|a|} a(db) = " + S.format(r));
        }
    }
    return out;
}

std::string superscript(unsigned k) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string s;
    for (char c : std::to_string(k)) s += digits[c - '0'];
    return s;
}

AlgebraPtr truncated_polynomial(unsigned n, const std::string& var) {
    if (n == 0) throw Error(ErrorCode::InvalidInput, "K[t]/t^0 is the zero ring");
    const std::size_t dim = n - 1;
    std::vector<std::string> labels;
    for (unsigned k = 1; k < n; ++k) labels.push_back(k == 1 ? var : var + superscript(k));
    std::vector<Vector> products(dim * dim, zeros(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (i + j + 2 < n) products[i * dim + j][i + j + 1] = 1;
    auto space = dim ? GradedSpace::make(0, 0, {labels}) : GradedSpace::make(0, -1, {});
    return std::make_shared<const NilpotentAlgebra>("K[" + var + "]/" + var + superscript(n), space,
                                                    Matrix(dim, dim), std::move(products));
}

AlgebraPtr square_zero(const std::vector<std::string>& labels, const std::string& name) {
    const std::size_t dim = labels.size();
    auto space = dim ? GradedSpace::make(0, 0, {labels}) : GradedSpace::make(0, -1, {});
    return std::make_shared<const NilpotentAlgebra>(name, space, Matrix(dim, dim),
                                                    std::vector<Vector>(dim * dim, zeros(dim)));
}

AlgebraPtr omega(int n) {
    auto space = GradedSpace::make(-n, -n + 1, {{"ω"}, {"dω"}});
    Matrix d(2, 2);
    d(1, 0) = 1;
    return std::make_shared<const NilpotentAlgebra>("Ω[" + std::to_string(n) + "]", space, std::move(d),
                                                    std::vector<Vector>(4, zeros(2)));
}

AlgebraPtr epsilon(int n) {
    auto space = GradedSpace::make(-n, -n, {{"ε"}});
    return std::make_shared<const NilpotentAlgebra>("K[ε]", space, Matrix(1, 1), std::vector<Vector>(1, zeros(1)));
}

ValidationReport validate_small_extension(const SmallExtension& e) {
    ValidationReport out;
    const auto& B = *e.b;
    const auto& A = *e.a;
    const std::size_t nb = B.dim(), na = A.dim();
    if (e.alpha.rows() != na || e.alpha.cols() != nb || e.kernel.rows() != nb || e.section.rows() != nb ||
        e.section.cols() != na) {
        out.add("shape", {}, "matrix shapes do not match the algebras");
        return out;
    }
    if (rank(e.alpha) != na) out.add("surjectivity", {}, "alpha is not surjective");
    if (!(e.alpha * e.section == Matrix::identity(na))) out.add("section", {}, "alpha ∘ section ≠ id");
    if (!(e.alpha * e.kernel).is_zero() || rank(e.kernel) != e.kernel.cols() || e.kernel.cols() + na != nb)
        out.add("kernel", {}, "J is not the kernel of alpha");
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t c = 0; c < e.kernel.cols(); ++c)
            if (!is_zero(B.multiply(unit(nb, i), e.kernel.col(c))))
                out.add("annihilation", {B.space()->label(i), B.space()->format(e.kernel.col(c))}, "m_B · J ≠ 0");
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            Vector r = e.alpha.apply(B.basis_product(i, j));
            axpy(r, Scalar(-1), A.multiply(e.alpha.col(i), e.alpha.col(j)));
            if (!is_zero(r))
                out.add("multiplicativity", {B.space()->label(i), B.space()->label(j)},
                        "alpha(ab) - alpha(a)alpha(b) = " + A.space()->format(r));
        }
    return out;
}

std::vector<SmallExtension> small_extension_tower(unsigned n) {
    if (n == 0) throw Error(ErrorCode::InvalidInput, "tower length must be positive");
    std::vector<SmallExtension> out;
    for (unsigned k = 1; k <= n; ++k) {
        auto b = truncated_polynomial(k + 1);
        auto a = truncated_polynomial(k);
        const std::size_t nb = k, na = k - 1;
        Matrix alpha(na, nb), section(nb, na), kernel(nb, 1);
        for (std::size_t i = 0; i < na; ++i) alpha(i, i) = section(i, i) = 1;
        kernel(nb - 1, 0) = 1;
        out.push_back({b, a, std::move(alpha), std::move(kernel), std::move(section)});
    }
    return out;
}

// ---------------------------------------------------------------- TensorDgla

Vector TensorDgla::pure(const Vector& l, const Vector& a) const {
    Vector out = zeros(dim());
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] == 0) continue;
        for (std::size_t al = 0; al < a.size(); ++al)
            if (a[al] != 0) out[at(i, al)] += l[i] * a[al];
    }
    return out;
}

Vector TensorDgla::component(const Vector& v, std::size_t alpha) const {
    Vector out = zeros(base->dim());
    for (std::size_t i = 0; i < base->dim(); ++i) out[i] = v[at(i, alpha)];
    return out;
}

Matrix TensorDgla::map_base(const Matrix& f, const TensorDgla& target) const {
    if (f.cols() != base->dim() || f.rows() != target.base->dim() || target.coeff->dim() != coeff->dim())
        throw Error(ErrorCode::InvalidInput, "f ⊗ id: shapes do not match");
    Matrix out(target.dim(), dim());
    for (std::size_t i = 0; i < base->dim(); ++i)
        for (std::size_t al = 0; al < coeff->dim(); ++al)
            for (std::size_t r = 0; r < f.rows(); ++r)
                if (f(r, i) != 0) out(target.at(r, al), at(i, al)) = f(r, i);
    return out;
}

Matrix TensorDgla::map_coeff(const Matrix& phi, const TensorDgla& target) const {
    if (phi.cols() != coeff->dim() || phi.rows() != target.coeff->dim() || target.base->dim() != base->dim())
        throw Error(ErrorCode::InvalidInput, "id ⊗ phi: shapes do not match");
    Matrix out(target.dim(), dim());
    for (std::size_t i = 0; i < base->dim(); ++i)
        for (std::size_t al = 0; al < coeff->dim(); ++al)
            for (std::size_t be = 0; be < phi.rows(); ++be)
                if (phi(be, al) != 0) out(target.at(i, be), at(i, al)) = phi(be, al);
    return out;
}

Vector TensorDgla::reduce_mod(const Vector& v, const Matrix& w) const {
    const std::size_t na = coeff->dim();
    const Matrix ww = w.rows() == na ? w : Matrix(na, 0);
    std::vector<Vector> cols = ww.columns();
    const auto comp = complement_indices(ww);
    for (auto j : comp) cols.push_back(unit(na, j));
    const Matrix inv = inverse(Matrix::from_columns(na, cols));
    Vector out;
    for (std::size_t i = 0; i < base->dim(); ++i) {
        Vector a = zeros(na);
        for (std::size_t al = 0; al < na; ++al) a[al] = v[at(i, al)];
        const Vector q = inv.apply(a);
        for (std::size_t k = ww.cols(); k < na; ++k) out.push_back(q[k]);
    }
    return out;
}

TensorDgla tensor_dgla(DglaPtr l, AlgebraPtr a) {
    if (!a->nilpotency_index())
        throw Error(ErrorCode::InvalidInput, "coefficient algebra '" + a->name() + "' is not nilpotent");
    const auto& L = *l->space();
    const auto& A = *a->space();
    const std::size_t nl = L.total_dim(), na = A.total_dim();
    std::map<int, std::vector<std::string>> labels;
    std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> members;
    for (std::size_t i = 0; i < nl; ++i)
        for (std::size_t al = 0; al < na; ++al) {
            const int deg = L.degree_of(i) + A.degree_of(al);
            labels[deg].push_back(L.label(i) + "⊗" + A.label(al));
            members[deg].emplace_back(i, al);
        }
    auto space = GradedSpace::from_map(labels);
    TensorDgla t;
    t.base = l;
    t.coeff = a;
    t.nu = *a->nilpotency_index();
    t.index.assign(nl * na, 0);
    for (const auto& [deg, ms] : members)
        for (std::size_t k = 0; k < ms.size(); ++k) t.index[ms[k].first * na + ms[k].second] = space->offset(deg) + k;

    const std::size_t n = space->total_dim();
    const Matrix& dl = l->differential();
    const Matrix& da = a->differential();
    Matrix d(n, n);
    for (std::size_t i = 0; i < nl; ++i)
        for (std::size_t al = 0; al < na; ++al) {
            const std::size_t col = t.at(i, al);
            for (std::size_t r = 0; r < nl; ++r)
                if (dl(r, i) != 0) d(t.at(r, al), col) += dl(r, i);
            const Scalar sign = (L.degree_of(i) % 2 == 0) ? 1 : -1;
            for (std::size_t be = 0; be < na; ++be)
                if (da(be, al) != 0) d(t.at(i, be), col) += sign * da(be, al);
        }

    std::vector<std::pair<std::size_t, std::size_t>> inv(n);
    for (std::size_t i = 0; i < nl; ++i)
        for (std::size_t al = 0; al < na; ++al) inv[t.at(i, al)] = {i, al};
    std::vector<BracketEntry> entries;
    if (!l->is_abelian())
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p; q < n; ++q) {
                const auto [i, al] = inv[p];
                const auto [j, be] = inv[q];
                const Vector xy = l->basis_bracket(i, j);
                const Vector& ab = a->basis_product(al, be);
                if (is_zero(xy) || is_zero(ab)) continue;
                const Scalar sign = koszul(A.degree_of(al), L.degree_of(j));
                Vector v = zeros(n);
                for (std::size_t r = 0; r < nl; ++r) {
                    if (xy[r] == 0) continue;
                    for (std::size_t ga = 0; ga < na; ++ga)
                        if (ab[ga] != 0) v[t.at(r, ga)] += sign * xy[r] * ab[ga];
                }
                entries.push_back({p, q, std::move(v)});
            }
    t.dgla = std::make_shared<const Dgla>(l->name() + "⊗" + a->name(), space, std::move(d), std::move(entries));
    return t;
}

}  // namespace mcdeform
