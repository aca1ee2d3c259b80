#include "mcdeform/maurer_cartan.hpp"

#include <map>

#include "mcdeform/error.hpp"

namespace mcdeform {

namespace {

void require_degree(const TensorDgla& t, const Vector& v, int deg, const char* what) {
    if (v.size() != t.dim())
        throw Error(ErrorCode::BaseMismatch, std::string(what) + " has " + std::to_string(v.size()) +
                                                 " coordinates but " + t.dgla->name() + " has dimension " +
                                                 std::to_string(t.dim()));
    if (!t.dgla->space()->is_homogeneous_of(v, deg))
        throw Error(ErrorCode::DegreeMismatch, std::string(what) + " = " + t.dgla->space()->format(v) +
                                                   " is not of degree " + std::to_string(deg));
}

// Splits v ∈ L ⊗ J into its coefficients along the columns of `kernel`.
std::vector<Vector> split_along(const TensorDgla& t, const Matrix& kernel, const Vector& v) {
    const std::size_t nl = t.base->dim(), nj = kernel.cols();
    std::vector<Vector> parts(nj, zeros(nl));
    for (std::size_t i = 0; i < nl; ++i) {
        Vector a = zeros(t.coeff->dim());
        for (std::size_t al = 0; al < a.size(); ++al) a[al] = v[t.at(i, al)];
        if (is_zero(a)) continue;
        auto c = solve(kernel, a);
        if (!c)
            throw Error(ErrorCode::InconsistentInput, "cocycle coefficient on '" + t.base->space()->label(i) +
                                                          "' does not lie in the kernel J");
        for (std::size_t s = 0; s < nj; ++s) parts[s][i] = (*c)[s];
    }
    return parts;
}

const Matrix& pick_section(const SmallExtension& e, const Matrix* section) {
    const Matrix& s = section ? *section : e.section;
    if (s.rows() != e.b->dim() || s.cols() != e.a->dim() || !(e.alpha * s == Matrix::identity(e.a->dim())))
        throw Error(ErrorCode::InvalidInput, "lifting section is not a right inverse of the extension map");
    return s;
}

std::vector<std::string> kernel_labels(const SmallExtension& e) {
    std::vector<std::string> out;
    for (std::size_t s = 0; s < e.kernel.cols(); ++s) out.push_back(e.b->space()->format(e.kernel.col(s)));
    return out;
}

Matrix classify_all(const CohomologyResult& coh, int deg, const std::vector<Vector>& cocycles) {
    Matrix m(coh.dim(deg), cocycles.size());
    if (coh.dim(deg) == 0) return m;
    for (std::size_t s = 0; s < cocycles.size(); ++s) m.set_col(s, coh.classify(deg, cocycles[s]));
    return m;
}

}  // namespace

Vector mc_residual(const TensorDgla& t, const Vector& x) {
    require_degree(t, x, 1, "x");
    Vector r = t.dgla->d(x);
    axpy(r, Scalar(1, 2), t.dgla->bracket(x, x));
    return r;
}

bool is_mc(const TensorDgla& t, const Vector& x) { return is_zero(mc_residual(t, x)); }

Vector gauge_apply(const TensorDgla& t, const Vector& a, const Vector& x) {
    require_degree(t, a, 0, "a");
    require_degree(t, x, 1, "x");
    const Dgla& l = *t.dgla;
    Vector term = l.bracket(a, x);
    axpy(term, Scalar(-1), l.d(a));
    Vector out = x;
    for (unsigned n = 0; !is_zero(term); ++n) {
        if (n > t.dim() + 1)
            throw Error(ErrorCode::InvalidInput, "gauge series does not terminate: coefficients are not nilpotent");
        axpy(out, 1 / factorial(n + 1), term);
        term = l.bracket(a, term);
    }
    return out;
}

namespace {

using Word = std::vector<char>;  // 0 = a, 1 = b

// Dynkin coefficients of every right-nested word up to the given length.
std::map<Word, Scalar> dynkin_words(unsigned max_len) {
    std::map<Word, Scalar> out;
    struct Frame {
        Word word;
        unsigned blocks;
        Scalar denom;  // Π r_i! s_i!
    };
    // extend by blocks (r, s) with r + s >= 1 until the word length reaches len
    std::vector<Frame> stack{{{}, 0, Scalar(1)}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.blocks > 0) {
            const unsigned len = static_cast<unsigned>(f.word.size());
            const Scalar sign = (f.blocks % 2 == 1) ? 1 : -1;
            out[f.word] += sign / (Scalar(f.blocks) * Scalar(len) * f.denom);
        }
        for (unsigned r = 0; f.word.size() + r <= max_len; ++r)
            for (unsigned s = 0; f.word.size() + r + s <= max_len; ++s) {
                if (r + s == 0) continue;
                Frame g{f.word, f.blocks + 1, f.denom * factorial(r) * factorial(s)};
                g.word.insert(g.word.end(), r, 0);
                g.word.insert(g.word.end(), s, 1);
                stack.push_back(std::move(g));
            }
    }
    return out;
}

}  // namespace

Vector bch_product(const TensorDgla& t, const Vector& a, const Vector& b) {
    require_degree(t, a, 0, "a");
    require_degree(t, b, 0, "b");
    const unsigned max_len = t.nu > 1 ? t.nu - 1 : 0;
    static thread_local std::map<unsigned, std::map<Word, Scalar>> cache;
    auto it = cache.find(max_len);
    if (it == cache.end()) it = cache.emplace(max_len, dynkin_words(max_len)).first;
    Vector out = zeros(t.dim());
    for (const auto& [word, coeff] : it->second) {
        if (coeff == 0) continue;
        Vector v = word.back() == 0 ? a : b;
        for (std::size_t k = word.size() - 1; k-- > 0 && !is_zero(v);) v = t.dgla->bracket(word[k] == 0 ? a : b, v);
        axpy(out, coeff, v);
    }
    return out;
}

Vector stabilizer_element(const TensorDgla& t, const Vector& x, const Vector& h) {
    require_degree(t, h, -1, "h");
    if (!is_mc(t, x)) throw Error(ErrorCode::NotVerifiedMC, "x = " + t.dgla->space()->format(x) + " is not MC");
    Vector a = t.dgla->d(h);
    axpy(a, Scalar(1), t.dgla->bracket(x, h));
    return a;
}

std::vector<std::pair<std::string, Scalar>> ObstructionClass::labelled() const {
    std::vector<std::pair<std::string, Scalar>> out;
    for (std::size_t k = 0; k < coords.rows(); ++k)
        for (std::size_t s = 0; s < coords.cols(); ++s)
            if (coords(k, s) != 0)
                out.emplace_back(cohomology->class_label(2, k) + "⊗" + j_labels[s], coords(k, s));
    return out;
}

// ------------------------------------------------------------ single functor

namespace {

struct SingleLift {
    TensorDgla ta;
    TensorDgla tb;
    Vector xt;
    Vector h;
};

SingleLift lift_single(const SmallExtension& e, const DglaPtr& l, const Vector& x, const Matrix* section) {
    SingleLift s{tensor_dgla(l, e.a), tensor_dgla(l, e.b), {}, {}};
    if (!is_mc(s.ta, x))
        throw Error(ErrorCode::NotVerifiedMC, "x = " + s.ta.dgla->space()->format(x) + " is not MC: residual " +
                                                  s.ta.dgla->space()->format(mc_residual(s.ta, x)));
    s.xt = s.ta.map_coeff(pick_section(e, section), s.tb).apply(x);
    s.h = mc_residual(s.tb, s.xt);
    return s;
}

}  // namespace

ObstructionClass obstruction_single(const SmallExtension& e, const DglaPtr& l, const Vector& x,
                                    const Matrix* section) {
    const SingleLift s = lift_single(e, l, x, section);
    ObstructionClass out;
    out.cohomology = std::make_shared<const CohomologyResult>(compute_cohomology(l->complex()));
    out.cocycles = split_along(s.tb, e.kernel, s.h);
    for (const auto& c : out.cocycles)
        if (!is_zero(l->d(c))) throw Error(ErrorCode::InconsistentInput, "obstruction cocycle is not closed");
    out.coords = classify_all(*out.cohomology, 2, out.cocycles);
    out.j_labels = kernel_labels(e);
    out.raw = s.h;
    return out;
}

std::optional<Vector> lift_if_unobstructed(const SmallExtension& e, const DglaPtr& l, const Vector& x,
                                           const ObstructionClass& cls, const Matrix* section) {
    const ObstructionClass again = obstruction_single(e, l, x, section);
    if (!(again.coords == cls.coords))
        throw Error(ErrorCode::InconsistentInput, "obstruction class does not match the recomputed cocycle");
    if (!again.is_zero()) return std::nullopt;
    const SingleLift s = lift_single(e, l, x, section);
    const ChainComplex cx = l->complex();
    const auto& L = *l->space();
    Vector out = s.xt;
    for (std::size_t j = 0; j < again.cocycles.size(); ++j) {
        auto q = solve(cx.d_block(1), L.component(again.cocycles[j], 2));
        if (!q) throw Error(ErrorCode::InconsistentInput, "class vanishes but the cocycle is not a boundary");
        axpy(out, Scalar(-1), s.tb.pure(L.embed(*q, 1), e.kernel.col(j)));
    }
    if (!is_mc(s.tb, out)) throw Error(ErrorCode::InconsistentInput, "constructed lift is not MC");
    return out;
}

// -------------------------------------------------------------- pair functor

TensorPair tensor_pair(const DglaMorphism& h, const DglaMorphism& g, const AlgebraPtr& a) {
    if (!(*h.target()->space() == *g.target()->space()))
        throw Error(ErrorCode::TargetMismatch, "h targets '" + h.target()->name() + "' but g targets '" +
                                                   g.target()->name() + "'");
    TensorDgla lt = tensor_dgla(h.source(), a);
    TensorDgla nt = tensor_dgla(g.source(), a);
    TensorDgla mt = tensor_dgla(h.target(), a);
    Matrix ht = lt.map_base(h.matrix(), mt);
    Matrix gt = nt.map_base(g.matrix(), mt);
    return TensorPair{h, g, std::move(lt), std::move(nt), std::move(mt), std::move(ht), std::move(gt)};
}

McTriple zero_triple(const TensorPair& tp) { return {zeros(tp.lt.dim()), zeros(tp.nt.dim()), zeros(tp.mt.dim())}; }

ValidationReport mc_pair_check(const TensorPair& tp, const McTriple& t) {
    ValidationReport out;
    const auto& LS = *tp.lt.dgla->space();
    const auto& NS = *tp.nt.dgla->space();
    const auto& MS = *tp.mt.dgla->space();
    if (t.x.size() != LS.total_dim() || t.y.size() != NS.total_dim() || t.p.size() != MS.total_dim()) {
        out.add("shape", {}, "triple coordinates do not match the tensored pair");
        return out;
    }
    bool degrees_ok = true;
    if (!LS.is_homogeneous_of(t.x, 1)) out.add("degree", {"x"}, "x is not of degree 1"), degrees_ok = false;
    if (!NS.is_homogeneous_of(t.y, 1)) out.add("degree", {"y"}, "y is not of degree 1"), degrees_ok = false;
    if (!MS.is_homogeneous_of(t.p, 0)) out.add("degree", {"p"}, "p is not of degree 0"), degrees_ok = false;
    if (!degrees_ok) return out;
    const Vector rx = mc_residual(tp.lt, t.x);
    if (!is_zero(rx)) out.add("mc-x", {"x"}, "dx + ½[x,x] = " + LS.format(rx));
    const Vector ry = mc_residual(tp.nt, t.y);
    if (!is_zero(ry)) out.add("mc-y", {"y"}, "dy + ½[y,y] = " + NS.format(ry));
    Vector link = tp.gt.apply(t.y);
    axpy(link, Scalar(-1), gauge_apply(tp.mt, t.p, tp.ht.apply(t.x)));
    if (!is_zero(link)) out.add("linking", {"x", "y", "p"}, "g(y) - e^p*h(x) = " + MS.format(link));
    return out;
}

McTriple gauge_apply_pair(const TensorPair& tp, const Vector& a, const Vector& b, const McTriple& t) {
    McTriple out;
    out.x = gauge_apply(tp.lt, a, t.x);
    out.y = gauge_apply(tp.nt, b, t.y);
    out.p = bch_product(tp.mt, tp.gt.apply(b), bch_product(tp.mt, t.p, negate(tp.ht.apply(a))));
    return out;
}

namespace {

struct PairLift {
    TensorPair ta;
    TensorPair tb;
    McTriple lifted;
    std::vector<Vector> cocycles;  // cone coordinates
};

PairLift lift_pair(const SmallExtension& e, const DglaMorphism& h, const DglaMorphism& g, const McTriple& t,
                   const Matrix* section, const ConeComplex& cone) {
    PairLift s{tensor_pair(h, g, e.a), tensor_pair(h, g, e.b), {}, {}};
    const ValidationReport rep = mc_pair_check(s.ta, t);
    if (!rep.ok())
        throw Error(ErrorCode::NotVerifiedTriple,
                    rep.violations.front().axiom + ": " + rep.violations.front().detail);
    const Matrix& sec = pick_section(e, section);
    s.lifted.x = s.ta.lt.map_coeff(sec, s.tb.lt).apply(t.x);
    s.lifted.y = s.ta.nt.map_coeff(sec, s.tb.nt).apply(t.y);
    s.lifted.p = s.ta.mt.map_coeff(sec, s.tb.mt).apply(t.p);
    const Vector l = mc_residual(s.tb.lt, s.lifted.x);
    const Vector k = mc_residual(s.tb.nt, s.lifted.y);
    Vector r = negate(s.tb.gt.apply(s.lifted.y));
    axpy(r, Scalar(1), gauge_apply(s.tb.mt, s.lifted.p, s.tb.ht.apply(s.lifted.x)));
    const auto ls = split_along(s.tb.lt, e.kernel, l);
    const auto ks = split_along(s.tb.nt, e.kernel, k);
    const auto rs = split_along(s.tb.mt, e.kernel, r);
    for (std::size_t j = 0; j < e.kernel.cols(); ++j) {
        Vector c = cone.assemble(ls[j], ks[j], rs[j]);
        if (!is_zero(cone.complex.d(c)))
            throw Error(ErrorCode::InconsistentInput, "pair obstruction cocycle is not a D-cycle");
        s.cocycles.push_back(std::move(c));
    }
    return s;
}

}  // namespace

ObstructionClass obstruction_pair(const SmallExtension& e, const DglaMorphism& h, const DglaMorphism& g,
                                  const McTriple& t, const Matrix* section) {
    const ConeComplex cone = cone_pair(h, g);
    const PairLift s = lift_pair(e, h, g, t, section, cone);
    ObstructionClass out;
    out.cohomology = std::make_shared<const CohomologyResult>(compute_cohomology(cone.complex));
    out.cocycles = s.cocycles;
    out.coords = classify_all(*out.cohomology, 2, out.cocycles);
    out.j_labels = kernel_labels(e);
    return out;
}

std::optional<McTriple> lift_pair_if_unobstructed(const SmallExtension& e, const DglaMorphism& h,
                                                  const DglaMorphism& g, const McTriple& t,
                                                  const ObstructionClass& cls, const Matrix* section) {
    const ConeComplex cone = cone_pair(h, g);
    const PairLift s = lift_pair(e, h, g, t, section, cone);
    const CohomologyResult coh = compute_cohomology(cone.complex);
    const Matrix coords = classify_all(coh, 2, s.cocycles);
    if (!(coords == cls.coords))
        throw Error(ErrorCode::InconsistentInput, "obstruction class does not match the recomputed cocycle");
    if (!coords.is_zero()) return std::nullopt;
    const auto& C = *cone.complex.space();
    McTriple out = s.lifted;
    for (std::size_t j = 0; j < s.cocycles.size(); ++j) {
        auto sol = solve(cone.complex.d_block(1), C.component(s.cocycles[j], 2));
        if (!sol) throw Error(ErrorCode::InconsistentInput, "class vanishes but the cocycle is not a boundary");
        const Vector full = C.embed(*sol, 1);
        const Vector jcol = e.kernel.col(j);
        axpy(out.x, Scalar(-1), s.tb.lt.pure(cone.part_l(full), jcol));
        axpy(out.y, Scalar(-1), s.tb.nt.pure(cone.part_n(full), jcol));
        axpy(out.p, Scalar(-1), s.tb.mt.pure(cone.part_m(full), jcol));
    }
    const ValidationReport rep = mc_pair_check(s.tb, out);
    if (!rep.ok()) throw Error(ErrorCode::InconsistentInput, "constructed lift fails " + rep.violations.front().axiom);
    return out;
}

ValidationReport verify_extended_equivalence(const TensorPair& tp, const McTriple& t1, const McTriple& t2,
                                             const Vector& a, const Vector& b, const Vector& c) {
    ValidationReport out;
    const Vector x2 = gauge_apply(tp.lt, a, t1.x);
    if (x2 != t2.x) out.add("x-slot", {"a"}, "e^a*x1 - x2 = " + tp.lt.dgla->space()->format(sub(x2, t2.x)));
    const Vector y2 = gauge_apply(tp.nt, b, t1.y);
    if (y2 != t2.y) out.add("y-slot", {"b"}, "e^b*y1 - y2 = " + tp.nt.dgla->space()->format(sub(y2, t2.y)));
    const Vector stab = stabilizer_element(tp.mt, tp.gt.apply(t1.y), c);
    const Vector p2 = bch_product(tp.mt, tp.gt.apply(b),
                                  bch_product(tp.mt, stab, bch_product(tp.mt, t1.p, negate(tp.ht.apply(a)))));
    if (p2 != t2.p)
        out.add("p-slot", {"a", "b", "c"},
                "g(b)•T•p1•(-h(a)) - p2 = " + tp.mt.dgla->space()->format(sub(p2, t2.p)));
    return out;
}

// ------------------------------------------------------- gauge equivalence

namespace {

// Level k asks for e^a * x ≡ y mod m^{k+1}. The unknowns are the new
// directions L⁰ ⊗ W_k (W_k a complement of m^{k+1} in m^k) together with the
// free directions left over from level k - 1. The condition is affine at
// level 1 and polynomial afterwards, so each level runs a short Newton
// iteration with symmetric-difference Jacobians.
class EquivSearch {
public:
    EquivSearch(const TensorDgla& t, const Vector& x, const Vector& y, const GaugeEquivBudget& budget)
        : t_(t), x_(x), y_(y), budget_(budget) {
        const auto& A = *t.coeff;
        const std::size_t na = A.dim();
        const auto& L = *t.base->space();
        for (unsigned k = 1; k < t.nu; ++k) {
            const Matrix& mk = A.power(k);
            const Matrix next = A.power(k + 1).rows() == na ? A.power(k + 1) : Matrix(na, 0);
            const RowEchelon e = rref(next.hstack(mk));
            std::vector<Vector> fresh;
            for (auto p : e.pivots) {
                if (p < next.cols()) continue;
                const Vector w = mk.col(p - next.cols());
                if (L.in_window(0))
                    for (std::size_t i = L.offset(0); i < L.offset(0) + L.dim(0); ++i)
                        fresh.push_back(t.pure(unit(L.total_dim(), i), w));
            }
            fresh_.push_back(std::move(fresh));
            quot_.push_back(next);
        }
    }

    GaugeEquivResult run() {
        GaugeEquivResult out;
        Vector a = zeros(t_.dim());
        std::vector<Vector> free;
        for (std::size_t k = 0; k < quot_.size(); ++k) {
            std::vector<Vector> dirs = free;
            dirs.insert(dirs.end(), fresh_[k].begin(), fresh_[k].end());
            bool solved = false;
            for (int step = 0; step < kNewtonSteps; ++step) {
                const auto r = residual(a, k);
                if (!r) break;
                if (is_zero(*r)) {
                    solved = true;
                    break;
                }
                auto jac = jacobian(a, k, dirs);
                if (!jac) break;
                auto c = solve(*jac, negate(*r));
                if (!c) {
                    if (k == 0) level1_infeasible_ = true;
                    break;
                }
                for (std::size_t u = 0; u < dirs.size(); ++u)
                    if ((*c)[u] != 0) axpy(a, (*c)[u], dirs[u]);
            }
            if (!solved) {
                fail_level_ = k + 1;
                return finish(out);
            }
            auto jac = jacobian(a, k, dirs);
            if (!jac) return finish(out);
            const Matrix ker = kernel_basis(*jac);
            free.clear();
            for (std::size_t c = 0; c < ker.cols(); ++c) {
                Vector v = zeros(t_.dim());
                for (std::size_t u = 0; u < dirs.size(); ++u)
                    if (ker(u, c) != 0) axpy(v, ker(u, c), dirs[u]);
                free.push_back(std::move(v));
            }
        }
        if (gauge_apply(t_, a, x_) == y_) {
            out.status = GaugeEquivResult::Status::Equivalent;
            out.witness = a;
        }
        return finish(out);
    }

private:
    static constexpr int kNewtonSteps = 8;

    GaugeEquivResult& finish(GaugeEquivResult& out) {
        out.nodes = nodes_;
        if (out.status == GaugeEquivResult::Status::Equivalent) return out;
        if (level1_infeasible_) {
            out.status = GaugeEquivResult::Status::NotEquivalent;
            out.certificate = "level 1: y - x is not congruent to a boundary d(L⁰⊗m_A) modulo m_A²";
        } else {
            out.status = GaugeEquivResult::Status::Undecided;
            out.certificate = budget_hit_ ? "node budget exhausted"
                                          : "no solution found at level " + std::to_string(fail_level_);
        }
        return out;
    }

    /// e^a * x - y modulo m^{k+2}, or nullopt once the budget is spent.
    std::optional<Vector> residual(const Vector& a, std::size_t k) {
        if (budget_.cancel && budget_.cancel->load()) throw Error(ErrorCode::Cancelled, "gauge-equivalence search cancelled");
        if (++nodes_ > budget_.max_nodes) {
            budget_hit_ = true;
            return std::nullopt;
        }
        Vector r = gauge_apply(t_, a, x_);
        axpy(r, Scalar(-1), y_);
        return t_.reduce_mod(r, quot_[k]);
    }

    std::optional<Matrix> jacobian(const Vector& a, std::size_t k, const std::vector<Vector>& dirs) {
        std::vector<Vector> cols;
        const std::size_t rows = t_.base->dim() * (t_.coeff->dim() - quot_[k].cols());
        for (const auto& u : dirs) {
            auto plus = residual(add(a, u), k);
            auto minus = plus ? residual(sub(a, u), k) : std::nullopt;
            if (!minus) return std::nullopt;
            cols.push_back(scale(Scalar(1, 2), sub(*plus, *minus)));
        }
        return Matrix::from_columns(rows, cols);
    }

    const TensorDgla& t_;
    const Vector& x_;
    const Vector& y_;
    GaugeEquivBudget budget_;
    std::vector<std::vector<Vector>> fresh_;
    std::vector<Matrix> quot_;
    std::size_t nodes_ = 0;
    bool budget_hit_ = false;
    bool level1_infeasible_ = false;
    std::size_t fail_level_ = 0;
};

}  // namespace

GaugeEquivResult gauge_equiv_decide(const TensorDgla& t, const Vector& x, const Vector& y,
                                    const GaugeEquivBudget& budget) {
    if (!t.coeff->is_artin())
        throw Error(ErrorCode::InvalidInput, "gauge equivalence is decided over ungraded Artinian coefficients only");
    require_degree(t, x, 1, "x");
    require_degree(t, y, 1, "y");
    if (!is_mc(t, x)) throw Error(ErrorCode::NotVerifiedMC, "x is not MC");
    if (!is_mc(t, y)) throw Error(ErrorCode::NotVerifiedMC, "y is not MC");
    return EquivSearch(t, x, y, budget).run();
}

// ------------------------------------------------------------------ tangent

namespace {

std::vector<std::size_t> degree_indices(const GradedSpace& s, int deg) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < s.dim(deg); ++k) out.push_back(s.offset(deg) + k);
    return out;
}

}  // namespace

TangentDims tangent_dims(const DglaPtr& l, int shift) {
    const TensorDgla t = tensor_dgla(l, epsilon(shift));
    const auto& T = *t.dgla->space();
    const auto ones = degree_indices(T, 1);
    const auto zeros_idx = degree_indices(T, 0);
    // MC over K·ε is linear since ε² = 0
    std::vector<Vector> residuals;
    for (auto b : ones) residuals.push_back(mc_residual(t, unit(t.dim(), b)));
    const std::size_t z = ones.size() - rank(Matrix::from_columns(t.dim(), residuals));
    std::vector<Vector> directions;
    const Vector origin = zeros(t.dim());
    for (auto a : zeros_idx) directions.push_back(gauge_apply(t, unit(t.dim(), a), origin));
    TangentDims out;
    out.direct = z - rank(Matrix::from_columns(t.dim(), directions));
    out.cohomological = compute_cohomology(l->complex()).dim(1 + shift);
    return out;
}

TangentDims tangent_dims(const DglaMorphism& h, const DglaMorphism& g, int shift) {
    const TensorPair tp = tensor_pair(h, g, epsilon(shift));
    const std::size_t nx = tp.lt.dim(), ny = tp.nt.dim(), np = tp.mt.dim();
    const std::size_t total = nx + ny + np;
    auto stack = [&](const McTriple& t) {
        Vector v = t.x;
        v.insert(v.end(), t.y.begin(), t.y.end());
        v.insert(v.end(), t.p.begin(), t.p.end());
        return v;
    };
    const McTriple zero = zero_triple(tp);

    // columns of the (linear) MC map on the unknowns x ∈ L¹ε, y ∈ N¹ε, p ∈ M⁰ε
    std::vector<Vector> columns;
    auto mc_map = [&](const McTriple& t) {
        Vector link = tp.gt.apply(t.y);
        axpy(link, Scalar(-1), gauge_apply(tp.mt, t.p, tp.ht.apply(t.x)));
        return stack({mc_residual(tp.lt, t.x), mc_residual(tp.nt, t.y), link});
    };
    for (auto b : degree_indices(*tp.lt.dgla->space(), 1)) {
        McTriple t = zero;
        t.x = unit(nx, b);
        columns.push_back(mc_map(t));
    }
    for (auto b : degree_indices(*tp.nt.dgla->space(), 1)) {
        McTriple t = zero;
        t.y = unit(ny, b);
        columns.push_back(mc_map(t));
    }
    for (auto b : degree_indices(*tp.mt.dgla->space(), 0)) {
        McTriple t = zero;
        t.p = unit(np, b);
        columns.push_back(mc_map(t));
    }
    const std::size_t z = columns.size() - rank(Matrix::from_columns(total, columns));

    // gauge orbit of 0 plus the irrelevant stabilizer of g(y) = 0
    std::vector<Vector> directions;
    for (auto a : degree_indices(*tp.lt.dgla->space(), 0))
        directions.push_back(stack(gauge_apply_pair(tp, unit(nx, a), zeros(ny), zero)));
    for (auto b : degree_indices(*tp.nt.dgla->space(), 0))
        directions.push_back(stack(gauge_apply_pair(tp, zeros(nx), unit(ny, b), zero)));
    for (auto c : degree_indices(*tp.mt.dgla->space(), -1)) {
        McTriple t = zero;
        t.p = bch_product(tp.mt, stabilizer_element(tp.mt, tp.gt.apply(zero.y), unit(np, c)), zero.p);
        directions.push_back(stack(t));
    }
    TangentDims out;
    out.direct = z - rank(Matrix::from_columns(total, directions));
    out.cohomological = compute_cohomology(cone_pair(h, g).complex).dim(1 + shift);
    return out;
}

}  // namespace mcdeform
