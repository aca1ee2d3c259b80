#include "doctest.h"

#include "mcdeform/builtins.hpp"
#include "mcdeform/error.hpp"
#include "mcdeform/maurer_cartan.hpp"
#include "support/oracles.hpp"

using namespace mcdeform;

namespace {

// Points and two-term acyclic pieces u -> v, written in a random basis of
// each degree. H^i has dimension equal to the number of points in degree i.
struct RandomComplex {
    ChainComplex complex;
    Matrix change;                  // new basis = change * normal basis
    std::map<int, std::size_t> points;
    std::vector<std::pair<int, bool>> pieces;  // (degree, two-term)
};

constexpr int kLo = -1;
constexpr int kHi = 2;

RandomComplex random_complex(oracle::Rng& rng, const std::string& tag) {
    std::map<int, std::vector<std::string>> labels;
    for (int d = kLo; d <= kHi; ++d) labels[d];
    RandomComplex out{ChainComplex(GradedSpace::make(0, -1, {}), Matrix(0, 0)), {}, {}, {}};
    const int count = rng.integer(2, 6);
    for (int k = 0; k < count; ++k) {
        const bool two = rng.coin();
        const int deg = rng.integer(kLo, two ? kHi - 1 : kHi);
        out.pieces.emplace_back(deg, two);
        const std::string n = std::to_string(k);
        if (two) {
            labels[deg].push_back(tag + "u" + n);
            labels[deg + 1].push_back(tag + "v" + n);
        } else {
            labels[deg].push_back(tag + "p" + n);
            ++out.points[deg];
        }
    }
    std::vector<std::vector<std::string>> blocks;
    for (int d = kLo; d <= kHi; ++d) blocks.push_back(labels[d]);
    auto space = GradedSpace::make(kLo, kHi, blocks);
    const std::size_t dim = space->total_dim();
    Matrix d(dim, dim);
    for (std::size_t k = 0; k < out.pieces.size(); ++k)
        if (out.pieces[k].second)
            d(*space->find(tag + "v" + std::to_string(k)), *space->find(tag + "u" + std::to_string(k))) = 1;
    Matrix p(dim, dim);
    for (int deg = kLo; deg <= kHi; ++deg) {
        const std::size_t n = space->dim(deg), o = space->offset(deg);
        const Matrix b = rng.invertible(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) p(o + r, o + c) = b(r, c);
    }
    out.change = p;
    out.complex = ChainComplex(space, p * d * inverse(p));
    return out;
}

/// Chain map between normal forms: points to points and pieces to pieces of
/// the same degree, plus a null-homotopic term d K + K d.
Matrix random_chain_map(oracle::Rng& rng, const RandomComplex& src, const RandomComplex& tgt) {
    const auto& S = *src.complex.space();
    const auto& T = *tgt.complex.space();
    Matrix f(T.total_dim(), S.total_dim());
    auto name = [](char c, std::size_t k) { return std::string(1, c) + std::to_string(k); };
    for (std::size_t i = 0; i < src.pieces.size(); ++i)
        for (std::size_t j = 0; j < tgt.pieces.size(); ++j) {
            if (src.pieces[i] != tgt.pieces[j]) continue;
            const Scalar c = rng.scalar();
            if (src.pieces[i].second) {
                f(*T.find("Nu" + std::to_string(j)), *S.find("Lu" + std::to_string(i))) = c;
                f(*T.find("Nv" + std::to_string(j)), *S.find("Lv" + std::to_string(i))) = c;
            } else {
                f(*T.find("N" + name('p', j)), *S.find("L" + name('p', i))) = c;
            }
        }
    const Matrix ds = inverse(src.change) * src.complex.differential().matrix() * src.change;
    const Matrix dt = inverse(tgt.change) * tgt.complex.differential().matrix() * tgt.change;
    Matrix k(T.total_dim(), S.total_dim());
    for (std::size_t c = 0; c < S.total_dim(); ++c)
        for (std::size_t r = 0; r < T.total_dim(); ++r)
            if (T.degree_of(r) == S.degree_of(c) - 1) k(r, c) = rng.scalar(2, false);
    Matrix g = f + dt * k + k * ds;
    return tgt.change * g * inverse(src.change);
}

DglaPtr abelian(const ChainComplex& c, const std::string& name) {
    return std::make_shared<const Dgla>(name, c.space(), c.differential().matrix(), std::vector<BracketEntry>{});
}

bool same_report(const ValidationReport& a, const ValidationReport& b) {
    if (a.violations.size() != b.violations.size()) return false;
    for (std::size_t i = 0; i < a.violations.size(); ++i) {
        const auto &x = a.violations[i], &y = b.violations[i];
        if (x.axiom != y.axiom || x.witness != y.witness || x.detail != y.detail) return false;
    }
    return true;
}

/// Random MC element of endw ⊗ m_A as a gauge transform of 0.
Vector random_mc(oracle::Rng& rng, const TensorDgla& t) {
    return gauge_apply(t, rng.homogeneous(*t.dgla->space(), 0), zeros(t.dim()));
}

}  // namespace

TEST_CASE("random complexes: cohomology, rank identity, Euler characteristic") {
    oracle::Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        RandomComplex rc = random_complex(rng, "L");
        const auto& s = *rc.complex.space();
        const Matrix& d = rc.complex.differential().matrix();
        auto h = compute_cohomology(rc.complex);
        const auto od = oracle::cohomology_dims(s, d);
        long euler_v = 0, euler_h = 0;
        for (int i = kLo; i <= kHi; ++i) {
            CHECK(h.dim(i) == rc.points[i]);
            CHECK(h.dim(i) == od[i - kLo]);
            // dim Z^i = dim B^i + dim H^i
            const std::size_t z = s.dim(i) - rank(rc.complex.differential().block(i));
            const std::size_t b = s.in_window(i - 1) ? rank(rc.complex.differential().block(i - 1)) : 0;
            CHECK(z == b + h.dim(i));
            const long sign = (i % 2 == 0) ? 1 : -1;
            euler_v += sign * static_cast<long>(s.dim(i));
            euler_h += sign * static_cast<long>(h.dim(i));
            // projection: representatives map to unit vectors, boundaries to zero
            const auto& c = h.at(i);
            for (std::size_t k = 0; k < c.dim; ++k) CHECK(h.classify(i, c.representatives[k]) == unit(c.dim, k));
            if (s.in_window(i - 1) && s.dim(i - 1) > 0) {
                Vector pre = rng.homogeneous(s, i - 1);
                Vector bd = rc.complex.d(pre);
                CHECK(is_zero(h.classify(i, bd)));
            }
        }
        CHECK(euler_v == euler_h);
    }
}

TEST_CASE("hom complexes square to zero and compute Hom of cohomology") {
    oracle::Rng rng(102);
    for (int trial = 0; trial < 15; ++trial) {
        RandomComplex v = random_complex(rng, "L"), w = random_complex(rng, "N");
        ChainComplex hom = hom_complex(v.complex, w.complex, kLo - kHi, kHi - kLo);
        const Matrix& d = hom.differential().matrix();
        CHECK((d * d).is_zero());
        auto h = compute_cohomology(hom);
        for (int n = kLo - kHi; n <= kHi - kLo; ++n) {
            std::size_t expected = 0;
            for (int i = kLo; i <= kHi; ++i)
                if (i + n >= kLo && i + n <= kHi) expected += v.points[i] * w.points[i + n];
            CHECK(h.dim(n) == expected);
        }
    }
}

TEST_CASE("serial and parallel rref agree") {
    oracle::Rng rng(103);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t r = rng.integer(1, 40), c = rng.integer(1, 40);
        Matrix m(r, c);
        if (trial % 2 == 0) {
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.scalar();
        } else {  // low rank
            const std::size_t k = rng.integer(1, 4);
            Matrix a(r, k), b(k, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < k; ++j) a(i, j) = rng.scalar();
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < c; ++j) b(i, j) = rng.scalar();
            m = a * b;
        }
        const RowEchelon s = rref_serial(m), p = rref_parallel(m);
        CHECK(s.pivots == p.pivots);
        CHECK(s.reduced == p.reduced);
        CHECK(s.pivots.size() == oracle::rank(m));
    }
}

TEST_CASE("serial and parallel Jacobi kernels agree") {
    std::vector<DglaPtr> cases;
    for (const auto& name : builtin_dgla_names()) cases.push_back(builtin_dgla(name));
    cases.push_back(tensor_dgla(builtin_dgla("heis"), truncated_polynomial(4)).dgla);
    cases.push_back(tensor_dgla(builtin_dgla("endw"), truncated_polynomial(3)).dgla);
    auto h = builtin_dgla("heis");
    auto entries = h->entries();
    for (auto& e : entries)
        if (e.left == 0 && e.right == 1) e.value = scale(2, e.value);  // [a,b] = 2c breaks [c,x] = -w
    cases.push_back(std::make_shared<const Dgla>("heis*", h->space(), h->differential(), entries));
    for (const auto& l : cases) {
        CAPTURE(l->name());
        CHECK(same_report(jacobi_violations_serial(*l), jacobi_violations_parallel(*l)));
    }
    CHECK_FALSE(jacobi_violations_serial(*cases.back()).ok());
}

TEST_CASE("gauge action preserves MC, composes by BCH, fixes exactly the solutions of [a,x] = da") {
    oracle::Rng rng(104);
    for (const auto& name : {"endw", "heis"}) {
        CAPTURE(name);
        for (unsigned n = 2; n <= 4; ++n) {
            TensorDgla t = tensor_dgla(builtin_dgla(name), truncated_polynomial(n));
            const auto& s = *t.dgla->space();
            for (int trial = 0; trial < 6; ++trial) {
                const Vector x = random_mc(rng, t);
                REQUIRE(is_mc(t, x));
                const Vector a = rng.homogeneous(s, 0), b = rng.homogeneous(s, 0);
                CHECK(is_mc(t, gauge_apply(t, a, x)));
                CHECK(gauge_apply(t, a, gauge_apply(t, b, x)) == gauge_apply(t, bch_product(t, a, b), x));

                // a ↦ [a,x] - da on (L ⊗ m_A)⁰; its kernel gives fixed points
                std::vector<Vector> cols;
                std::vector<std::size_t> idx;
                for (std::size_t k = 0; k < s.dim(0); ++k) {
                    const Vector e = unit(t.dim(), s.offset(0) + k);
                    cols.push_back(sub(t.dgla->bracket(e, x), t.dgla->d(e)));
                }
                const Matrix m = Matrix::from_columns(t.dim(), cols);
                const Matrix ker = kernel_basis(m);
                Vector fixed = zeros(t.dim());
                for (std::size_t c = 0; c < ker.cols(); ++c) {
                    const Scalar w = rng.scalar();
                    for (std::size_t k = 0; k < s.dim(0); ++k) fixed[s.offset(0) + k] += w * ker(k, c);
                }
                CHECK(gauge_apply(t, fixed, x) == x);
                for (const Vector& c : {a, add(fixed, a)}) {
                    const bool eq = t.dgla->bracket(c, x) == t.dgla->d(c);
                    CHECK(eq == (gauge_apply(t, c, x) == x));
                }
            }
        }
    }
}

TEST_CASE("obstruction classes do not depend on the section") {
    oracle::Rng rng(105);
    auto l = builtin_dgla("obstructed");
    for (const SmallExtension& e : small_extension_tower(4)) {
        if (e.a->dim() == 0) continue;
        TensorDgla ta = tensor_dgla(l, e.a);
        for (int trial = 0; trial < 5; ++trial) {
            Vector x = zeros(ta.dim());
            x[ta.at(0, 0)] = rng.scalar();  // x⊗t: MC only when ν(A) = 2
            for (std::size_t al = 1; al < e.a->dim(); ++al) x[ta.at(0, al)] = rng.scalar();
            if (!is_mc(ta, x)) x[ta.at(0, 0)] = 0;
            REQUIRE(is_mc(ta, x));
            Matrix r(e.kernel.cols(), e.a->dim());
            for (std::size_t i = 0; i < r.rows(); ++i)
                for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = rng.scalar();
            const Matrix other = e.section + e.kernel * r;
            CHECK(e.alpha * other == Matrix::identity(e.a->dim()));
            ObstructionClass c1 = obstruction_single(e, l, x);
            ObstructionClass c2 = obstruction_single(e, l, x, &other);
            CHECK(c1.coords == c2.coords);
            CHECK(lift_if_unobstructed(e, l, x, c2, &other).has_value() == c1.is_zero());
        }
    }
}

TEST_CASE("obstruction classes are natural in the small extension") {
    // e1: K[t,s]/(t³, ts, s²) -> K[t,s]/(t², ts, s²), J = (t²)
    // e2: K[t]/t³ -> K[t]/t², mapped to by s -> 0
    auto bs = GradedSpace::make(0, 0, {{"t", "s", "t²"}});
    std::vector<Vector> bp(9, zeros(3));
    bp[0] = unit(3, 2);
    auto b1 = std::make_shared<const NilpotentAlgebra>("B1", bs, Matrix(3, 3), bp);
    auto a1 = square_zero({"t", "s"}, "A1");
    Matrix alpha(2, 3), section(3, 2);
    alpha(0, 0) = alpha(1, 1) = 1;
    section(0, 0) = section(1, 1) = 1;
    SmallExtension e1{b1, a1, alpha, Matrix::from_columns(3, {unit(3, 2)}), section};
    REQUIRE(validate_small_extension(e1).ok());
    SmallExtension e2 = small_extension_tower(2)[1];
    Matrix phi_a(1, 2);
    phi_a(0, 0) = 1;
    const Matrix phi_j = Matrix::identity(1);

    oracle::Rng rng(106);
    for (const auto& name : {"obstructed", "heis", "abelian2"}) {
        auto l = builtin_dgla(name);
        TensorDgla t1 = tensor_dgla(l, a1), t2 = tensor_dgla(l, e2.a);
        for (int trial = 0; trial < 5; ++trial) {
            const Vector x = rng.homogeneous(*t1.dgla->space(), 1);
            if (!is_mc(t1, x)) continue;
            const Vector x2 = t1.map_coeff(phi_a, t2).apply(x);
            REQUIRE(is_mc(t2, x2));
            ObstructionClass c1 = obstruction_single(e1, l, x);
            ObstructionClass c2 = obstruction_single(e2, l, x2);
            CHECK(c1.coords * phi_j.transpose() == c2.coords);
        }
    }
}

TEST_CASE("levels filter the product") {
    auto bs = GradedSpace::make(0, 0, {{"t", "s", "t²"}});
    std::vector<Vector> bp(9, zeros(3));
    bp[0] = unit(3, 2);
    auto b1 = std::make_shared<const NilpotentAlgebra>("B1", bs, Matrix(3, 3), bp);
    for (const AlgebraPtr& a : {truncated_polynomial(5), square_zero({"x", "y"}), AlgebraPtr(b1)})
        for (std::size_t i = 0; i < a->dim(); ++i)
            for (std::size_t j = 0; j < a->dim(); ++j) {
                const Vector p = a->basis_product(i, j);
                if (is_zero(p)) continue;
                const Matrix& w = a->power(a->level(i) + a->level(j));
                CHECK(oracle::solvable(w, p));
            }
}

TEST_CASE("tensor products with random coefficients validate") {
    oracle::Rng rng(107);
    for (const auto& name : builtin_dgla_names())
        for (const AlgebraPtr& a : {truncated_polynomial(rng.integer(2, 4)), square_zero({"s1", "s2"}), epsilon(rng.integer(-1, 1))}) {
            CAPTURE(name);
            TensorDgla t = tensor_dgla(builtin_dgla(name), a);
            CHECK(validate_dgla(*t.dgla).ok());
        }
}

TEST_CASE("long exact sequence and fiber products on random abelian pairs") {
    oracle::Rng rng(108);
    for (int trial = 0; trial < 20; ++trial) {
        RandomComplex l = random_complex(rng, "L"), n = random_complex(rng, "L"), m = random_complex(rng, "N");
        auto ld = abelian(l.complex, "L"), nd = abelian(n.complex, "N"), md = abelian(m.complex, "M");
        DglaMorphism h(ld, md, random_chain_map(rng, l, m));
        DglaMorphism g(nd, md, random_chain_map(rng, n, m));
        REQUIRE(validate_morphism(h).ok());
        REQUIRE(validate_morphism(g).ok());
        ConeComplex c = cone_pair(h, g);
        CHECK((c.complex.differential().matrix() * c.complex.differential().matrix()).is_zero());
        CHECK(long_exact_sequence_check(h, g).exact());
        FiberProduct f = fiber_product_dgla(h, g);
        CHECK(validate_dgla(*f.dgla).ok());
        SwapMap s = swap_iso(h, g);
        const Matrix sq = swap_iso(g, h).map.matrix() * s.map.matrix();
        CHECK(sq == Matrix::identity(sq.rows()));
    }
}

TEST_CASE("pair obstruction classes do not depend on the section") {
    oracle::Rng rng(109);
    for (const auto& name : {"id-obstructed", "heis-sub", "endw-id", "acyclic-id"}) {
        CAPTURE(name);
        BuiltinPair p = builtin_pair(name);
        for (const SmallExtension& e : small_extension_tower(3)) {
            if (e.a->dim() == 0) continue;
            TensorPair tp = tensor_pair(p.h, p.g, e.a);
            for (int trial = 0; trial < 3; ++trial) {
                McTriple t = zero_triple(tp);
                const Vector x = rng.homogeneous(*tp.lt.dgla->space(), 1);
                if (is_mc(tp.lt, x) && p.h.source() == p.g.source()) t = {x, x, zeros(tp.mt.dim())};
                REQUIRE(mc_pair_check(tp, t).ok());
                Matrix r(e.kernel.cols(), e.a->dim());
                for (std::size_t i = 0; i < r.rows(); ++i)
                    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = rng.scalar();
                const Matrix other = e.section + e.kernel * r;
                ObstructionClass c1 = obstruction_pair(e, p.h, p.g, t);
                ObstructionClass c2 = obstruction_pair(e, p.h, p.g, t, &other);
                CHECK(c1.coords == c2.coords);
                ConeComplex cone = cone_pair(p.h, p.g);
                for (const auto& v : c2.cocycles) CHECK(is_zero(cone.complex.d(v)));
                auto lift = lift_pair_if_unobstructed(e, p.h, p.g, t, c1);
                CHECK(lift.has_value() == c1.is_zero());
            }
        }
    }
}
