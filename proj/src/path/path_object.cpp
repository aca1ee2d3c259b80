#include "mcdeform/path_object.hpp"

#include "mcdeform/error.hpp"

namespace mcdeform {

namespace {

void accumulate(std::map<unsigned, Vector>& part, unsigned k, const Scalar& c, const Vector& v) {
    if (c == 0 || is_zero(v)) return;
    auto it = part.find(k);
    if (it == part.end()) it = part.emplace(k, zeros(v.size())).first;
    axpy(it->second, c, v);
}

// Parts of v on even and odd degree basis elements.
std::pair<Vector, Vector> split_parity(const GradedSpace& s, const Vector& v) {
    Vector even = zeros(v.size()), odd = zeros(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) (s.degree_of(k) % 2 == 0 ? even : odd)[k] = v[k];
    return {even, odd};
}

Scalar binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Scalar(r);
}

Scalar power(const Scalar& a, unsigned k) {
    Scalar r = 1;
    for (unsigned i = 0; i < k; ++i) r *= a;
    return r;
}

}  // namespace

PolyElement PolyElement::constant(const Vector& m) {
    PolyElement p;
    if (!mcdeform::is_zero(m)) p.t.emplace(0, m);
    return p;
}

void PolyElement::prune() {
    for (auto* part : {&t, &dt})
        for (auto it = part->begin(); it != part->end();) it = mcdeform::is_zero(it->second) ? part->erase(it) : ++it;
}

PolyElement poly_add(const PolyElement& x, const PolyElement& y) {
    PolyElement out = x;
    for (const auto& [k, v] : y.t) accumulate(out.t, k, 1, v);
    for (const auto& [k, v] : y.dt) accumulate(out.dt, k, 1, v);
    out.prune();
    return out;
}

PolyElement poly_scale(const Scalar& c, const PolyElement& x) {
    PolyElement out;
    for (const auto& [k, v] : x.t) accumulate(out.t, k, c, v);
    for (const auto& [k, v] : x.dt) accumulate(out.dt, k, c, v);
    out.prune();
    return out;
}

PolyElement poly_d(const Dgla& m, const PolyElement& x) {
    PolyElement out;
    for (const auto& [i, v] : x.t) {
        accumulate(out.t, i, 1, m.d(v));
        if (i > 0) {
            auto [even, odd] = split_parity(*m.space(), v);
            accumulate(out.dt, i - 1, Scalar(i), even);
            accumulate(out.dt, i - 1, -Scalar(i), odd);
        }
    }
    for (const auto& [j, v] : x.dt) accumulate(out.dt, j, 1, m.d(v));
    out.prune();
    return out;
}

PolyElement poly_bracket(const Dgla& m, const PolyElement& x, const PolyElement& y) {
    PolyElement out;
    for (const auto& [i, v] : x.t) {
        for (const auto& [j, w] : y.t) accumulate(out.t, i + j, 1, m.bracket(v, w));
        for (const auto& [j, w] : y.dt) accumulate(out.dt, i + j, 1, m.bracket(v, w));
    }
    for (const auto& [i, v] : x.dt)
        for (const auto& [j, w] : y.t) {
            auto [even, odd] = split_parity(*m.space(), w);
            accumulate(out.dt, i + j, 1, m.bracket(v, even));
            accumulate(out.dt, i + j, -1, m.bracket(v, odd));
        }
    out.prune();
    return out;
}

Vector evaluate(const Scalar& a, const PolyElement& x, std::size_t dim) {
    Vector out = zeros(dim);
    for (const auto& [i, v] : x.t) axpy(out, power(a, i), v);
    return out;
}

PolyElement substitute_affine(const PolyElement& x, const Scalar& c, const Scalar& b) {
    PolyElement out;
    for (const auto& [i, v] : x.t)
        for (unsigned k = 0; k <= i; ++k) accumulate(out.t, k, binomial(i, k) * power(c, k) * power(b, i - k), v);
    for (const auto& [j, v] : x.dt)
        for (unsigned k = 0; k <= j; ++k) accumulate(out.dt, k, binomial(j, k) * power(c, k + 1) * power(b, j - k), v);
    out.prune();
    return out;
}

std::optional<int> poly_degree(const Dgla& m, const PolyElement& x) {
    std::optional<int> deg;
    auto visit = [&](const Vector& v, int extra) {
        auto d = m.space()->homogeneous_degree(v);
        if (!d) return false;
        if (deg && *deg != *d + extra) return false;
        deg = *d + extra;
        return true;
    };
    for (const auto& [i, v] : x.t)
        if (!visit(v, 0)) return std::nullopt;
    for (const auto& [j, v] : x.dt)
        if (!visit(v, 1)) return std::nullopt;
    return deg;
}

std::string format_poly(const Dgla& m, const PolyElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    auto term = [&](const Vector& v, unsigned k, bool dt) {
        if (!out.empty()) out += " + ";
        out += "(" + m.space()->format(v) + ")";
        if (k == 1) out += "·t";
        if (k > 1) out += "·t" + superscript(k);
        if (dt) out += "·dt";
    };
    for (const auto& [i, v] : x.t) term(v, i, false);
    for (const auto& [j, v] : x.dt) term(v, j, true);
    return out;
}

ValidationReport membership_H(const Dgla& m, const Matrix& h, const Matrix& g, const HPairElement& x) {
    ValidationReport out;
    Vector r1 = h.apply(x.l);
    axpy(r1, Scalar(-1), evaluate(1, x.m, m.dim()));
    if (!is_zero(r1)) out.add("e1", {"l", "m"}, "h(l) - e_1(m) = " + m.space()->format(r1));
    Vector r0 = g.apply(x.n);
    axpy(r0, Scalar(-1), evaluate(0, x.m, m.dim()));
    if (!is_zero(r0)) out.add("e0", {"n", "m"}, "g(n) - e_0(m) = " + m.space()->format(r0));
    return out;
}

ValidationReport membership_H(const DglaMorphism& h, const DglaMorphism& g, const HPairElement& x) {
    return membership_H(*h.target(), h.matrix(), g.matrix(), x);
}

ValidationReport membership_K(const Dgla& m, const Matrix& h, const Matrix& g, const KElement& x, bool gluing) {
    ValidationReport out;
    Vector r1 = h.apply(x.l);
    axpy(r1, Scalar(-1), evaluate(1, x.m2, m.dim()));
    if (!is_zero(r1)) out.add("e1", {"l", "m2"}, "h(l) - e_1(m2) = " + m.space()->format(r1));
    Vector r0 = g.apply(x.n);
    axpy(r0, Scalar(-1), evaluate(0, x.m1, m.dim()));
    if (!is_zero(r0)) out.add("e0", {"n", "m1"}, "g(n) - e_0(m1) = " + m.space()->format(r0));
    if (!gluing) return out;
    Vector glue = evaluate(1, x.m1, m.dim());
    axpy(glue, Scalar(-1), evaluate(0, x.m2, m.dim()));
    if (!is_zero(glue)) out.add("gluing", {"m1", "m2"}, "e_1(m1) - e_0(m2) = " + m.space()->format(glue));
    return out;
}

KElement barycentric_embed(const DglaMorphism& h, const DglaMorphism& g, const HPairElement& x) {
    const ValidationReport in = membership_H(h, g, x);
    if (!in.ok()) throw Error(ErrorCode::NotVerified, "input is not in H: " + in.violations.front().detail);
    KElement out{x.l, x.n, substitute_affine(x.m, Scalar(1, 2), 0), substitute_affine(x.m, Scalar(1, 2), Scalar(1, 2))};
    const ValidationReport res = membership_K(*h.target(), h.matrix(), g.matrix(), out);
    if (!res.ok()) throw Error(ErrorCode::NotVerified, "embedded element fails " + res.violations.front().axiom);
    return out;
}

TruncatedPath truncated_path_complex(const ChainComplex& m, unsigned n) {
    if (n < 1) throw Error(ErrorCode::WindowTooSmall, "truncation needs N >= 1");
    const auto& M = *m.space();
    struct Slot {
        bool dt;
        unsigned k;
        std::size_t b;
    };
    std::map<int, std::vector<Slot>> slots;
    for (unsigned k = 0; k <= n; ++k)
        for (std::size_t b = 0; b < M.total_dim(); ++b) slots[M.degree_of(b)].push_back({false, k, b});
    for (unsigned k = 0; k + 1 <= n; ++k)
        for (std::size_t b = 0; b < M.total_dim(); ++b) slots[M.degree_of(b) + 1].push_back({true, k, b});
    std::map<int, std::vector<std::string>> labels;
    TruncatedPath out{ChainComplex(GradedSpace::make(0, -1, {}), Matrix(0, 0)), {}, {}};
    for (const auto& [deg, ss] : slots)
        for (const auto& s : ss) {
            std::string l = M.label(s.b);
            if (s.k == 1) l += "·t";
            if (s.k > 1) l += "·t" + superscript(s.k);
            if (s.dt) l += "·dt";
            labels[deg].push_back(l);
            out.slot.emplace_back(s.dt, s.k);
            out.coeff.push_back(s.b);
        }
    auto space = GradedSpace::from_map(labels);
    const std::size_t dim = space->total_dim();
    std::map<std::tuple<bool, unsigned, std::size_t>, std::size_t> pos;
    for (std::size_t i = 0; i < dim; ++i) pos[{out.slot[i].first, out.slot[i].second, out.coeff[i]}] = i;
    const Matrix& dm = m.differential().matrix();
    Matrix d(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        const auto [is_dt, k] = out.slot[c];
        const std::size_t b = out.coeff[c];
        for (std::size_t r = 0; r < M.total_dim(); ++r)
            if (dm(r, b) != 0) d(pos.at({is_dt, k, r}), c) += dm(r, b);
        if (!is_dt && k > 0) d(pos.at({true, k - 1, b}), c) += (M.degree_of(b) % 2 == 0 ? 1 : -1) * Scalar(k);
    }
    out.complex = ChainComplex(space, std::move(d));
    return out;
}

Subcomplex truncated_H_complex(const DglaMorphism& h, const DglaMorphism& g, unsigned n) {
    if (!(*h.target()->space() == *g.target()->space()))
        throw Error(ErrorCode::TargetMismatch, "h and g have different targets");
    const ChainComplex mc = h.target()->complex();
    const TruncatedPath tp = truncated_path_complex(mc, n);
    const ChainComplex ln = direct_sum(h.source()->complex(), "L", g.source()->complex(), "N");
    const ChainComplex nested = direct_sum(ln, "LN", tp.complex, "M");
    std::vector<std::vector<std::string>> blocks;
    for (int i = nested.space()->dmin(); i <= nested.space()->dmax(); ++i) {
        blocks.push_back(nested.space()->labels(i));
        for (auto& l : blocks.back())
            if (l.rfind("LN:", 0) == 0) l = l.substr(3);
    }
    const ChainComplex ambient(GradedSpace::make(nested.space()->dmin(), nested.space()->dmax(), blocks),
                               nested.differential().matrix());
    const auto& A = *ambient.space();
    const auto& LN = *ln.space();
    const auto& T = *tp.complex.space();
    const auto& M = *mc.space();
    const auto& Ls = *h.source()->space();
    const auto& Ns = *g.source()->space();

    // (h(l) - e_1(m), g(n) - e_0(m)) into M ⊕ M
    const ChainComplex mm = direct_sum(mc, "e1", mc, "e0");
    const auto& MM = *mm.space();
    auto row = [&](std::size_t which, std::size_t b) {
        const int deg = M.degree_of(b);
        return MM.offset(deg) + which * M.dim(deg) + (b - M.offset(deg));
    };
    Matrix e(MM.total_dim(), A.total_dim());
    for (std::size_t c = 0; c < A.total_dim(); ++c) {
        const int deg = A.degree_of(c);
        std::size_t local = c - A.offset(deg);
        if (local < LN.dim(deg)) {
            if (local < Ls.dim(deg)) {
                const Vector img = h.matrix().col(Ls.offset(deg) + local);
                for (std::size_t b = 0; b < img.size(); ++b)
                    if (img[b] != 0) e(row(0, b), c) += img[b];
            } else {
                const Vector img = g.matrix().col(Ns.offset(deg) + local - Ls.dim(deg));
                for (std::size_t b = 0; b < img.size(); ++b)
                    if (img[b] != 0) e(row(1, b), c) += img[b];
            }
        } else {
            const std::size_t tidx = T.offset(deg) + (local - LN.dim(deg));
            const auto [is_dt, k] = tp.slot[tidx];
            if (is_dt) continue;
            const std::size_t b = tp.coeff[tidx];
            e(row(0, b), c) -= 1;
            if (k == 0) e(row(1, b), c) -= 1;
        }
    }
    const GradedMap constraints(ambient.space(), mm.space(), 0, std::move(e));
    std::map<int, Matrix> kernels;
    for (int i = A.dmin(); i <= A.dmax(); ++i) kernels.emplace(i, kernel_basis(constraints.block(i)));
    return subcomplex(ambient, kernels);
}

CohomologyResult truncated_H_cohomology(const DglaMorphism& h, const DglaMorphism& g, unsigned n) {
    return compute_cohomology(truncated_H_complex(h, g, n).complex);
}

namespace {

bool poly_is_mc(const Dgla& m, const PolyElement& x) {
    PolyElement r = poly_add(poly_d(m, x), poly_scale(Scalar(1, 2), poly_bracket(m, x, x)));
    return r.is_zero();
}

}  // namespace

KTriple map_triple_to_K(const TensorPair& tp, const McTriple& t) {
    const ValidationReport in = mc_pair_check(tp, t);
    if (!in.ok()) throw Error(ErrorCode::NotVerified, "input triple fails " + in.violations.front().axiom);
    KTriple out{{t.x, t.y, PolyElement::constant(tp.gt.apply(t.y)), PolyElement::constant(tp.ht.apply(t.x))}, t.p};
    const Dgla& m = *tp.mt.dgla;
    const ValidationReport k = membership_K(m, tp.ht, tp.gt, out.k, false);
    if (!k.ok()) throw Error(ErrorCode::NotVerified, "K constraint fails: " + k.violations.front().detail);
    if (!is_mc(tp.lt, out.k.l) || !is_mc(tp.nt, out.k.n) || !poly_is_mc(m, out.k.m1) || !poly_is_mc(m, out.k.m2))
        throw Error(ErrorCode::NotVerified, "a component of G(x, y) is not MC");
    const Vector e1 = evaluate(1, out.k.m2, m.dim());
    const Vector e0 = evaluate(0, out.k.m1, m.dim());
    if (gauge_apply(tp.mt, t.p, e1) != e0)
        throw Error(ErrorCode::NotVerified, "linking e_0 = e^p * e_1 fails");
    return out;
}

McTriple psi_fiber_to_pair(const TensorPair& tp, const Vector& l, const Vector& n) {
    Vector diff = tp.ht.apply(l);
    axpy(diff, Scalar(-1), tp.gt.apply(n));
    if (!is_zero(diff))
        throw Error(ErrorCode::NotInFiberProduct, "h(l) - g(n) = " + tp.mt.dgla->space()->format(diff));
    McTriple out{l, n, zeros(tp.mt.dim())};
    const ValidationReport rep = mc_pair_check(tp, out);
    if (!rep.ok()) throw Error(ErrorCode::NotVerified, rep.violations.front().axiom + ": " + rep.violations.front().detail);
    return out;
}

}  // namespace mcdeform
