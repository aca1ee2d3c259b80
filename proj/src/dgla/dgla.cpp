#include "mcdeform/dgla.hpp"

#include <omp.h>

#include <algorithm>

#include "mcdeform/error.hpp"

namespace mcdeform {

namespace {

Scalar koszul(int p, int q) { return ((p * q) % 2 == 0) ? Scalar(1) : Scalar(-1); }
Scalar parity(int p) { return (p % 2 == 0) ? Scalar(1) : Scalar(-1); }

}  // namespace

// ----------------------------------------------------------------------- Dgla

Dgla::Dgla(std::string name, SpacePtr space, Matrix differential, std::vector<BracketEntry> entries)
    : name_(std::move(name)), space_(std::move(space)), d_(std::move(differential)) {
    const std::size_t n = space_->total_dim();
    if (d_.rows() != n || d_.cols() != n)
        throw Error(ErrorCode::InvalidInput, "dgla '" + name_ + "': differential shape does not match basis");
    std::sort(entries.begin(), entries.end(), [](const BracketEntry& a, const BracketEntry& b) {
        return std::pair(a.left, a.right) < std::pair(b.left, b.right);
    });
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        if (e.left >= n || e.right >= n || e.value.size() != n)
            throw Error(ErrorCode::InvalidInput, "dgla '" + name_ + "': bracket entry out of range");
        if (e.left > e.right)
            throw Error(ErrorCode::InvalidInput, "dgla '" + name_ + "': bracket entry [" + space_->label(e.left) +
                                                     ", " + space_->label(e.right) +
                                                     "] must be given with left index <= right index");
        if (k > 0 && entries[k - 1].left == e.left && entries[k - 1].right == e.right)
            throw Error(ErrorCode::InvalidInput, "dgla '" + name_ + "': duplicate bracket entry [" +
                                                     space_->label(e.left) + ", " + space_->label(e.right) + "]");
        if (!is_zero(e.value)) entries_.push_back(e);
    }
    table_.assign(n * n, {});
    for (const auto& e : entries_) {
        const Scalar back = -koszul(space_->degree_of(e.left), space_->degree_of(e.right));
        for (std::size_t k = 0; k < n; ++k) {
            if (e.value[k] == 0) continue;
            table_[e.left * n + e.right].emplace_back(k, e.value[k]);
            if (e.left != e.right) table_[e.right * n + e.left].emplace_back(k, back * e.value[k]);
        }
    }
}

void Dgla::add_to(Vector& out, std::size_t i, std::size_t j, const Scalar& c) const {
    for (const auto& [k, v] : table_[i * dim() + j]) out[k] += c * v;
}

Vector Dgla::bracket(const Vector& a, const Vector& b) const {
    const std::size_t n = dim();
    Vector out = zeros(n);
    if (entries_.empty()) return out;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (b[j] != 0) add_to(out, i, j, a[i] * b[j]);
    }
    return out;
}

Vector Dgla::basis_bracket(std::size_t i, std::size_t j) const {
    Vector out = zeros(dim());
    add_to(out, i, j, Scalar(1));
    return out;
}

// -------------------------------------------------------------- DglaMorphism

DglaMorphism::DglaMorphism(DglaPtr source, DglaPtr target, Matrix map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (map_.rows() != target_->dim() || map_.cols() != source_->dim())
        throw Error(ErrorCode::InvalidInput, "morphism " + source_->name() + " -> " + target_->name() +
                                                 ": matrix shape does not match basis sizes");
}

DglaMorphism DglaMorphism::identity(DglaPtr l) {
    const std::size_t n = l->dim();
    return DglaMorphism(l, l, Matrix::identity(n));
}

DglaMorphism DglaMorphism::zero(DglaPtr source, DglaPtr target) {
    Matrix m(target->dim(), source->dim());
    return DglaMorphism(std::move(source), std::move(target), std::move(m));
}

// ---------------------------------------------------------------- validation

namespace {

void check_jacobi_row(const Dgla& l, std::size_t a, ValidationReport& out) {
    const auto& V = *l.space();
    const std::size_t n = l.dim();
    const Vector ea = unit(n, a);
    for (std::size_t b = 0; b < n; ++b) {
        const Vector eb = unit(n, b);
        const Vector ab = l.basis_bracket(a, b);
        const Scalar sign = koszul(V.degree_of(a), V.degree_of(b));
        for (std::size_t c = 0; c < n; ++c) {
            const Vector ec = unit(n, c);
            Vector r = l.bracket(ea, l.basis_bracket(b, c));
            axpy(r, Scalar(-1), l.bracket(ab, ec));
            axpy(r, -sign, l.bracket(eb, l.basis_bracket(a, c)));
            if (!is_zero(r))
                out.add("jacobi", {V.label(a), V.label(b), V.label(c)},
                        "[a,[b,c]] - [[a,b],c] - (-1)^{|a||b|}[b,[a,c]] = " + V.format(r));
        }
    }
}

}  // namespace

ValidationReport jacobi_violations_serial(const Dgla& l) {
    ValidationReport out;
    if (l.is_abelian()) return out;
    for (std::size_t a = 0; a < l.dim(); ++a) check_jacobi_row(l, a, out);
    return out;
}

ValidationReport jacobi_violations_parallel(const Dgla& l) {
    ValidationReport out;
    if (l.is_abelian()) return out;
    const auto n = static_cast<std::ptrdiff_t>(l.dim());
    std::vector<ValidationReport> rows(l.dim());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t a = 0; a < n; ++a) check_jacobi_row(l, static_cast<std::size_t>(a), rows[static_cast<std::size_t>(a)]);
    for (const auto& r : rows) out.append(r);
    return out;
}

ValidationReport validate_dgla(const Dgla& l) {
    ValidationReport out;
    const auto& V = *l.space();
    const std::size_t n = l.dim();
    const Matrix& d = l.differential();

    for (std::size_t a = 0; a < n; ++a) {
        const Vector da = d.col(a);
        if (!V.is_homogeneous_of(da, V.degree_of(a) + 1))
            out.add("differential-degree", {V.label(a)}, "d(" + V.label(a) + ") = " + V.format(da) +
                                                             " is not of degree " + std::to_string(V.degree_of(a) + 1));
        const Vector dda = d.apply(da);
        if (!is_zero(dda)) out.add("d-squared", {V.label(a)}, "d(d(" + V.label(a) + ")) = " + V.format(dda));
    }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            const Vector ab = l.basis_bracket(a, b);
            const int deg = V.degree_of(a) + V.degree_of(b);
            if (!V.is_homogeneous_of(ab, deg))
                out.add("bracket-degree", {V.label(a), V.label(b)},
                        "[" + V.label(a) + "," + V.label(b) + "] = " + V.format(ab) + " is not of degree " +
                            std::to_string(deg));
            Vector r = ab;
            axpy(r, koszul(V.degree_of(a), V.degree_of(b)), l.basis_bracket(b, a));
            if (!is_zero(r))
                out.add("antisymmetry", {V.label(a), V.label(b)},
                        "[a,b] + (-1)^{|a||b|}[b,a] = " + V.format(r));
        }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Vector r = l.d(l.basis_bracket(a, b));
            axpy(r, Scalar(-1), l.bracket(d.col(a), unit(n, b)));
            axpy(r, -parity(V.degree_of(a)), l.bracket(unit(n, a), d.col(b)));
            if (!is_zero(r))
                out.add("leibniz", {V.label(a), V.label(b)},
                        "d[a,b] - [da,b] - (-1)^{|a|}[a,db] = " + V.format(r));
        }

    out.append(omp_get_max_threads() > 1 ? jacobi_violations_parallel(l) : jacobi_violations_serial(l));
    return out;
}

ValidationReport validate_morphism(const DglaMorphism& f) {
    ValidationReport out;
    const auto& S = *f.source()->space();
    const auto& T = *f.target()->space();
    const std::size_t n = S.total_dim();
    for (std::size_t a = 0; a < n; ++a) {
        const Vector fa = f.matrix().col(a);
        if (!T.is_homogeneous_of(fa, S.degree_of(a)))
            out.add("morphism-degree", {S.label(a)}, "f(" + S.label(a) + ") = " + T.format(fa) +
                                                         " is not of degree " + std::to_string(S.degree_of(a)));
        Vector r = f.apply(f.source()->d(unit(n, a)));
        axpy(r, Scalar(-1), f.target()->d(fa));
        if (!is_zero(r)) out.add("chain-map", {S.label(a)}, "f(da) - d f(a) = " + T.format(r));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            Vector r = f.apply(f.source()->basis_bracket(a, b));
            axpy(r, Scalar(-1), f.target()->bracket(f.matrix().col(a), f.matrix().col(b)));
            if (!is_zero(r))
                out.add("bracket-preservation", {S.label(a), S.label(b)}, "f([a,b]) - [f(a),f(b)] = " + T.format(r));
        }
    return out;
}

// ------------------------------------------------------------- constructions

DglaPtr zero_dgla(const std::string& name) {
    return std::make_shared<const Dgla>(name, GradedSpace::make(0, -1, {}), Matrix(0, 0), std::vector<BracketEntry>{});
}

DglaPtr product_dgla(const Dgla& l, const Dgla& n, const std::string& prefix_l, const std::string& prefix_n) {
    const auto& L = *l.space();
    const auto& N = *n.space();
    std::map<int, std::vector<std::string>> labels;
    for (int i = L.dmin(); i <= L.dmax(); ++i)
        for (const auto& s : L.labels(i)) labels[i].push_back(prefix_l + ":" + s);
    for (int i = N.dmin(); i <= N.dmax(); ++i)
        for (const auto& s : N.labels(i)) labels[i].push_back(prefix_n + ":" + s);
    auto space = GradedSpace::from_map(labels);
    const std::size_t dim = space->total_dim();
    std::vector<std::size_t> pos_l(L.total_dim()), pos_n(N.total_dim());
    for (std::size_t k = 0; k < L.total_dim(); ++k) {
        const int deg = L.degree_of(k);
        pos_l[k] = space->offset(deg) + (k - L.offset(deg));
    }
    for (std::size_t k = 0; k < N.total_dim(); ++k) {
        const int deg = N.degree_of(k);
        pos_n[k] = space->offset(deg) + L.dim(deg) + (k - N.offset(deg));
    }
    Matrix d(dim, dim);
    for (std::size_t c = 0; c < L.total_dim(); ++c)
        for (std::size_t r = 0; r < L.total_dim(); ++r)
            if (l.differential()(r, c) != 0) d(pos_l[r], pos_l[c]) = l.differential()(r, c);
    for (std::size_t c = 0; c < N.total_dim(); ++c)
        for (std::size_t r = 0; r < N.total_dim(); ++r)
            if (n.differential()(r, c) != 0) d(pos_n[r], pos_n[c]) = n.differential()(r, c);
    std::vector<BracketEntry> entries;
    auto remap = [&](const Vector& v, const std::vector<std::size_t>& pos) {
        Vector out = zeros(dim);
        for (std::size_t k = 0; k < v.size(); ++k) out[pos[k]] = v[k];
        return out;
    };
    for (const auto& e : l.entries()) entries.push_back({pos_l[e.left], pos_l[e.right], remap(e.value, pos_l)});
    for (const auto& e : n.entries()) entries.push_back({pos_n[e.left], pos_n[e.right], remap(e.value, pos_n)});
    return std::make_shared<const Dgla>(l.name() + "x" + n.name(), space, std::move(d), std::move(entries));
}

SubDgla sub_dgla(const Dgla& parent, const std::map<int, Matrix>& basis_by_degree, const std::string& name) {
    const auto& P = *parent.space();
    std::map<int, std::vector<std::string>> labels;
    std::vector<Vector> cols;
    for (const auto& [deg, basis] : basis_by_degree)
        for (std::size_t c = 0; c < basis.cols(); ++c) {
            Vector full = P.embed(basis.col(c), deg);
            labels[deg].push_back(P.format(full));
            cols.push_back(std::move(full));
        }
    auto space = GradedSpace::from_map(labels);
    Matrix inclusion = Matrix::from_columns(P.total_dim(), cols);
    const std::size_t m = space->total_dim();
    auto coords = [&](const Vector& v, const std::string& what) {
        auto x = solve(inclusion, v);
        if (!x) throw Error(ErrorCode::InvalidInput, "sub-DGLA '" + name + "' is not closed under " + what);
        return *x;
    };
    Matrix d(m, m);
    for (std::size_t c = 0; c < m; ++c) d.set_col(c, coords(parent.d(inclusion.col(c)), "d"));
    std::vector<BracketEntry> entries;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            Vector v = parent.bracket(inclusion.col(a), inclusion.col(b));
            if (is_zero(v)) continue;
            entries.push_back({a, b, coords(v, "the bracket [" + space->label(a) + ", " + space->label(b) + "]")});
        }
    return SubDgla{std::make_shared<const Dgla>(name, space, std::move(d), std::move(entries)), std::move(inclusion)};
}

DglaPtr adjoin_d(const Dgla& l) {
    const auto& L = *l.space();
    std::string delta = "δ";
    while (L.find(delta)) delta += "'";
    const int lo = std::min(L.total_dim() ? L.dmin() : 1, 1);
    const int hi = std::max(L.total_dim() ? L.dmax() : 1, 1);
    std::vector<std::vector<std::string>> blocks;
    for (int i = lo; i <= hi; ++i) {
        auto b = L.labels(i);
        if (i == 1) b.push_back(delta);
        blocks.push_back(std::move(b));
    }
    auto space = GradedSpace::make(lo, hi, blocks);
    const std::size_t n = space->total_dim();
    std::vector<std::size_t> pos(L.total_dim());
    for (std::size_t k = 0; k < L.total_dim(); ++k) {
        const int deg = L.degree_of(k);
        pos[k] = space->offset(deg) + (k - L.offset(deg));
    }
    const std::size_t di = space->offset(1) + L.dim(1);
    auto remap = [&](const Vector& v) {
        Vector out = zeros(n);
        for (std::size_t k = 0; k < v.size(); ++k) out[pos[k]] = v[k];
        return out;
    };
    Matrix d(n, n);
    for (std::size_t c = 0; c < L.total_dim(); ++c) {
        const Vector dc = remap(l.differential().col(c));
        d.set_col(pos[c], dc);
    }
    std::vector<BracketEntry> entries;
    for (const auto& e : l.entries()) entries.push_back({pos[e.left], pos[e.right], remap(e.value)});
    for (std::size_t k = 0; k < L.total_dim(); ++k) {
        const Vector dv = remap(l.differential().col(k));
        if (is_zero(dv)) continue;
        if (pos[k] < di)
            entries.push_back({pos[k], di, scale(-parity(L.degree_of(k)), dv)});  // [v, δ]' = -(-1)^{|v|} dv
        else
            entries.push_back({di, pos[k], dv});  // [δ, v]' = dv
    }
    return std::make_shared<const Dgla>(l.name() + "'", space, std::move(d), std::move(entries));
}

bool FiberProduct::surjective_everywhere() const {
    return std::all_of(surjective.begin(), surjective.end(), [](const auto& kv) { return kv.second; });
}

FiberProduct fiber_product_dgla(const DglaMorphism& h, const DglaMorphism& g) {
    if (!(*h.target()->space() == *g.target()->space()))
        throw Error(ErrorCode::TargetMismatch, "h targets '" + h.target()->name() + "' but g targets '" +
                                                   g.target()->name() + "'");
    const auto& M = *h.target()->space();
    auto product = product_dgla(*h.source(), *g.source());
    const auto& P = *product->space();
    // (h - g) on L ⊕ N in product coordinates
    Matrix diff(M.total_dim(), P.total_dim());
    for (std::size_t c = 0; c < P.total_dim(); ++c) {
        const int deg = P.degree_of(c);
        const std::size_t local = c - P.offset(deg);
        const auto& Ls = *h.source()->space();
        const auto& Ns = *g.source()->space();
        Vector col;
        if (local < Ls.dim(deg)) {
            col = h.matrix().col(Ls.offset(deg) + local);
        } else {
            col = negate(g.matrix().col(Ns.offset(deg) + (local - Ls.dim(deg))));
        }
        diff.set_col(c, col);
    }
    const GradedMap hg(product->space(), h.target()->space(), 0, diff);
    std::map<int, Matrix> kernels;
    for (int i = P.dmin(); i <= P.dmax(); ++i) kernels.emplace(i, kernel_basis(hg.block(i)));
    SubDgla sub;
    try {
        sub = sub_dgla(*product, kernels, h.source()->name() + "x_" + h.target()->name() + g.source()->name());
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidInput, std::string("fiber product: ") + e.what());
    }
    FiberProduct out{sub.dgla, sub.inclusion, {}};
    for (int i = M.dmin(); i <= M.dmax(); ++i) out.surjective[i] = rank(hg.block(i)) == M.dim(i);
    return out;
}

ValidationReport cartan_homotopy_check(const CartanHomotopyCandidate& c) {
    ValidationReport out;
    const auto& L = *c.source->space();
    const auto& M = *c.target->space();
    if (c.map.rows() != M.total_dim() || c.map.cols() != L.total_dim())
        throw Error(ErrorCode::InvalidInput, "Cartan homotopy candidate: matrix shape does not match basis sizes");
    const std::size_t n = L.total_dim();
    for (std::size_t a = 0; a < n; ++a) {
        const Vector ia = c.map.col(a);
        if (!M.is_homogeneous_of(ia, L.degree_of(a) - 1))
            out.add("homotopy-degree", {L.label(a)}, "i(" + L.label(a) + ") = " + M.format(ia) + " is not of degree " +
                                                         std::to_string(L.degree_of(a) - 1));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const Vector ia = c.map.col(a);
            const Vector ib = c.map.col(b);
            const Vector dib = add(c.target->d(ib), c.map.apply(c.source->d(unit(n, b))));
            Vector r = c.map.apply(c.source->basis_bracket(a, b));
            axpy(r, Scalar(-1), c.target->bracket(ia, dib));
            if (!is_zero(r))
                out.add("cartan-bracket", {L.label(a), L.label(b)}, "i([a,b]) - [i(a), d'i(b)] = " + M.format(r));
            const Vector comm = c.target->bracket(ia, ib);
            if (!is_zero(comm))
                out.add("cartan-commute", {L.label(a), L.label(b)}, "[i(a), i(b)] = " + M.format(comm));
        }
    return out;
}

}  // namespace mcdeform
