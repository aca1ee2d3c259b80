#include "doctest.h"

#include <algorithm>

#include "mcdeform/builtins.hpp"
#include "mcdeform/error.hpp"
#include "mcdeform/maurer_cartan.hpp"
#include "support/lifts.hpp"
#include "support/oracles.hpp"

using namespace mcdeform;

namespace {

Vector el(const TensorDgla& t, std::initializer_list<std::pair<const char*, Scalar>> terms) {
    Vector v = zeros(t.dim());
    for (const auto& [label, c] : terms) {
        auto k = t.dgla->space()->find(label);
        REQUIRE_MESSAGE(k, label);
        v[*k] = c;
    }
    return v;
}

bool has_axiom(const ValidationReport& r, const std::string& axiom) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.axiom == axiom; });
}

}  // namespace

TEST_CASE("MC residual examples") {
    TensorDgla t = tensor_dgla(builtin_dgla("obstructed"), truncated_polynomial(3));
    CHECK(is_zero(mc_residual(t, zeros(t.dim()))));
    CHECK(mc_residual(t, el(t, {{"x⊗t", 1}})) == el(t, {{"y⊗t²", 1}}));

    TensorDgla a = tensor_dgla(builtin_dgla("abelian2"), truncated_polynomial(3));
    oracle::Rng rng(1);
    for (int i = 0; i < 10; ++i) {
        Vector x = rng.homogeneous(*a.dgla->space(), 1);
        CHECK(mc_residual(a, x) == a.dgla->d(x));
    }
    CHECK(mc_residual(a, el(a, {{"e3⊗t", 1}})) == el(a, {{"w⊗t", 1}}));
    CHECK_THROWS_AS(mc_residual(a, el(a, {{"c⊗t", 1}})), Error);
}

TEST_CASE("gauge action examples") {
    TensorDgla t = tensor_dgla(builtin_dgla("heis"), truncated_polynomial(3));
    CHECK(gauge_apply(t, el(t, {{"a⊗t", 1}}), el(t, {{"x⊗t", 1}})) == el(t, {{"x⊗t", 1}, {"y⊗t²", 1}}));

    // a ∈ L⁰ ⊗ J with J·m_A = 0: e^a * x = x - da
    TensorDgla e = tensor_dgla(builtin_dgla("endw"), truncated_polynomial(3));
    const Vector a = el(e, {{"p⊗t²", 1}, {"q⊗t²", -2}});
    oracle::Rng rng(2);
    for (int i = 0; i < 5; ++i) {
        Vector x = rng.homogeneous(*e.dgla->space(), 1);
        CHECK(gauge_apply(e, a, x) == sub(x, e.dgla->d(a)));
    }

    // [a, x] = da gives a fixed point
    TensorDgla h0 = tensor_dgla(builtin_dgla("heis"), truncated_polynomial(4));
    const Vector c = el(h0, {{"c⊗t", 1}, {"b⊗t²", 3}});
    const Vector x = el(h0, {{"w⊗t", 1}, {"y⊗t³", 1}});
    CHECK(is_zero(h0.dgla->bracket(c, x)));
    CHECK(gauge_apply(h0, c, x) == x);
    CHECK_THROWS_AS(gauge_apply(h0, x, x), Error);
}

TEST_CASE("BCH examples") {
    TensorDgla t = tensor_dgla(builtin_dgla("heis0"), truncated_polynomial(3));
    const Vector p = el(t, {{"p⊗t", 1}}), q = el(t, {{"q⊗t", 1}});
    CHECK(bch_product(t, p, q) == el(t, {{"p⊗t", 1}, {"q⊗t", 1}, {"z⊗t²", Scalar(1, 2)}}));
    oracle::Rng rng(4);
    TensorDgla h = tensor_dgla(builtin_dgla("heis"), truncated_polynomial(5));
    for (int i = 0; i < 10; ++i) {
        Vector a = rng.homogeneous(*h.dgla->space(), 0);
        CHECK(bch_product(h, a, zeros(h.dim())) == a);
        CHECK(bch_product(h, zeros(h.dim()), a) == a);
        CHECK(is_zero(bch_product(h, a, negate(a))));
    }
}

TEST_CASE("stabilizer elements fix x") {
    TensorDgla t = tensor_dgla(builtin_dgla("endw"), truncated_polynomial(4));
    oracle::Rng rng(6);
    const Vector zero = zeros(t.dim());
    int checked = 0;
    for (int i = 0; i < 30 && checked < 10; ++i) {
        Vector x = rng.homogeneous(*t.dgla->space(), 1);
        if (!is_mc(t, x)) continue;
        ++checked;
        CHECK(is_zero(stabilizer_element(t, x, zero)));
        Vector h = rng.homogeneous(*t.dgla->space(), -1);
        Vector a = stabilizer_element(t, x, h);
        CHECK(gauge_apply(t, a, x) == x);
    }
    CHECK(checked >= 5);
    // L^{-1} = 0: the only parameter is 0
    TensorDgla hs = tensor_dgla(builtin_dgla("heis"), truncated_polynomial(3));
    CHECK(hs.dgla->space()->dim(-1) == 0);
}

TEST_CASE("obstruction for obstructed over K[t]/t³ -> K[t]/t²") {
    auto l = builtin_dgla("obstructed");
    SmallExtension e = small_extension_tower(2)[1];
    TensorDgla ta = tensor_dgla(l, e.a);
    const Vector x = el(ta, {{"x⊗t", 1}});
    REQUIRE(is_mc(ta, x));
    ObstructionClass c = obstruction_single(e, l, x);
    CHECK_FALSE(c.is_zero());
    REQUIRE(c.coords.rows() == 1);
    REQUIRE(c.coords.cols() == 1);
    CHECK(c.coords(0, 0) == 1);
    auto lab = c.labelled();
    REQUIRE(lab.size() == 1);
    CHECK(lab[0].first == "y⊗t²");
    CHECK(c.cocycles[0] == Vector{0, 1});
    CHECK_FALSE(lift_if_unobstructed(e, l, x, c));
    CHECK_FALSE(oracle::single_lift_exists(e, l, x));
}

TEST_CASE("liftable elements have zero class") {
    auto l = builtin_dgla("obstructed");
    SmallExtension e = small_extension_tower(3)[2];  // K[t]/t⁴ -> K[t]/t³
    TensorDgla ta = tensor_dgla(l, e.a);
    const Vector x = el(ta, {{"x⊗t²", 1}});
    REQUIRE(is_mc(ta, x));
    ObstructionClass c = obstruction_single(e, l, x);
    CHECK(c.is_zero());
    auto lift = lift_if_unobstructed(e, l, x, c);
    REQUIRE(lift);
    TensorDgla tb = tensor_dgla(l, e.b);
    CHECK(*lift == ta.map_coeff(e.section, tb).apply(x));  // h = 0: x̃ unchanged
    CHECK(is_mc(tb, *lift));
    CHECK(oracle::single_lift_exists(e, l, x));
}

TEST_CASE("non-MC input is rejected") {
    auto l = builtin_dgla("obstructed");
    SmallExtension e = small_extension_tower(3)[2];
    TensorDgla ta = tensor_dgla(l, e.a);
    try {
        obstruction_single(e, l, el(ta, {{"x⊗t", 1}}));
        FAIL("expected NotVerifiedMC");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::NotVerifiedMC);
    }
}

TEST_CASE("abelian examples always lift") {
    oracle::Rng rng(8);
    for (const auto& name : {"acyclic", "abelian2"}) {
        auto l = builtin_dgla(name);
        for (unsigned n = 1; n <= 4; ++n) {
            SmallExtension e = small_extension_tower(n).back();
            TensorDgla ta = tensor_dgla(l, e.a);
            TensorDgla tb = tensor_dgla(l, e.b);
            for (int trial = 0; trial < 5; ++trial) {
                Vector x = rng.homogeneous(*ta.dgla->space(), 1);
                // project to cocycles: MC over abelian L is Z¹ ⊗ m_A
                if (!is_mc(ta, x)) {
                    Matrix z = kernel_basis(ta.dgla->differential());
                    x = zeros(ta.dim());
                    for (std::size_t c = 0; c < z.cols(); ++c)
                        if (ta.dgla->space()->is_homogeneous_of(z.col(c), 1)) axpy(x, rng.scalar(), z.col(c));
                }
                REQUIRE(is_mc(ta, x));
                ObstructionClass c = obstruction_single(e, l, x);
                CHECK(c.is_zero());
                auto lift = lift_if_unobstructed(e, l, x, c);
                REQUIRE(lift);
                CHECK(is_mc(tb, *lift));
            }
        }
    }
}

TEST_CASE("mismatched class is rejected") {
    auto l = builtin_dgla("obstructed");
    SmallExtension e = small_extension_tower(2)[1];
    TensorDgla ta = tensor_dgla(l, e.a);
    ObstructionClass c = obstruction_single(e, l, el(ta, {{"x⊗t", 1}}));
    ObstructionClass forged = c;
    forged.coords = Matrix(1, 1);
    CHECK_THROWS_AS(lift_if_unobstructed(e, l, el(ta, {{"x⊗t", 1}}), forged), Error);
}

TEST_CASE("MC triples") {
    for (const auto& name : builtin_pair_names()) {
        BuiltinPair p = builtin_pair(name);
        TensorPair tp = tensor_pair(p.h, p.g, truncated_polynomial(3));
        CHECK(mc_pair_check(tp, zero_triple(tp)).ok());
    }
    BuiltinPair p = builtin_pair("id-obstructed");
    TensorPair tp = tensor_pair(p.h, p.g, truncated_polynomial(3));
    const Vector x = el(tp.lt, {{"x⊗t²", 1}});
    CHECK(mc_pair_check(tp, {x, x, zeros(tp.mt.dim())}).ok());
    McTriple bad{x, zeros(tp.nt.dim()), zeros(tp.mt.dim())};
    ValidationReport r = mc_pair_check(tp, bad);
    REQUIRE_FALSE(r.ok());
    CHECK(has_axiom(r, "linking"));
    CHECK(r.violations.front().detail.find("x⊗t²") != std::string::npos);
    McTriple not_mc{el(tp.lt, {{"x⊗t", 1}}), el(tp.lt, {{"x⊗t", 1}}), zeros(tp.mt.dim())};
    CHECK(has_axiom(mc_pair_check(tp, not_mc), "mc-x"));
}

TEST_CASE("gauge action on triples") {
    BuiltinPair p = builtin_pair("heis-sub");
    TensorPair tp = tensor_pair(p.h, p.g, truncated_polynomial(4));
    McTriple z = zero_triple(tp);
    const Vector a0 = zeros(tp.lt.dim()), b0 = zeros(tp.nt.dim());
    oracle::Rng rng(9);
    // heis has no degree-2 part, so every degree-1 element is MC
    McTriple t{rng.homogeneous(*tp.lt.dgla->space(), 1), {}, zeros(tp.mt.dim())};
    t.y = tp.ht.apply(t.x);
    REQUIRE(mc_pair_check(tp, t).ok());
    McTriple same = gauge_apply_pair(tp, a0, b0, t);
    CHECK(same.x == t.x);
    CHECK(same.y == t.y);
    CHECK(same.p == t.p);
    CHECK(mc_pair_check(tp, z).ok());

    BuiltinPair id = builtin_pair("endw-id");
    TensorPair ti = tensor_pair(id.h, id.g, truncated_polynomial(3));
    const Vector a = el(ti.lt, {{"p⊗t", 1}, {"q⊗t²", 2}});
    const Vector x = el(ti.lt, {{"e⊗t", 1}});
    REQUIRE(is_mc(ti.lt, x));
    McTriple r = gauge_apply_pair(ti, a, a, {x, x, zeros(ti.mt.dim())});
    CHECK(r.x == gauge_apply(ti.lt, a, x));
    CHECK(r.y == r.x);
    CHECK(is_zero(r.p));
}

TEST_CASE("pair obstruction for h = g = id on obstructed") {
    BuiltinPair p = builtin_pair("id-obstructed");
    SmallExtension e = small_extension_tower(2)[1];
    TensorPair tp = tensor_pair(p.h, p.g, e.a);
    const Vector x = el(tp.lt, {{"x⊗t", 1}});
    McTriple t{x, x, zeros(tp.mt.dim())};
    REQUIRE(mc_pair_check(tp, t).ok());
    ObstructionClass c = obstruction_pair(e, p.h, p.g, t);
    ConeComplex cone = cone_pair(p.h, p.g);
    REQUIRE(c.cocycles.size() == 1);
    CHECK(c.cocycles[0] == cone.assemble(Vector{0, 1}, Vector{0, 1}, Vector{0, 0}));
    CHECK(is_zero(cone.complex.d(c.cocycles[0])));
    // H²(C_(id,id)) by row reduction
    auto h2 = compute_cohomology(cone.complex);
    CHECK(c.coords.rows() == h2.dim(2));
    CHECK(h2.dim(2) == 1);
    CHECK_FALSE(c.is_zero());
    CHECK_FALSE(lift_pair_if_unobstructed(e, p.h, p.g, t, c));
    CHECK_FALSE(oracle::pair_lift_exists(e, p.h, p.g, t));
}

TEST_CASE("pair obstruction with empty sources lives in H¹(M) ⊗ J") {
    BuiltinPair p = builtin_pair("sources-zero");
    SmallExtension e = small_extension_tower(2)[1];
    TensorPair tp = tensor_pair(p.h, p.g, e.a);
    ObstructionClass c = obstruction_pair(e, p.h, p.g, zero_triple(tp));
    auto hm = compute_cohomology(p.h.target()->complex());
    CHECK(c.coords.rows() == hm.dim(1));
    CHECK(c.is_zero());
}

TEST_CASE("liftable triples lift") {
    for (const auto& name : {"acyclic-id", "heis-sub", "endw-id"}) {
        CAPTURE(name);
        BuiltinPair p = builtin_pair(name);
        oracle::Rng rng(10);
        for (unsigned n = 2; n <= 3; ++n) {
            SmallExtension e = small_extension_tower(n).back();
            TensorPair tp = tensor_pair(p.h, p.g, e.a);
            McTriple t = zero_triple(tp);
            for (int trial = 0; trial < 10; ++trial) {
                Vector x = rng.homogeneous(*tp.lt.dgla->space(), 1);
                if (!is_mc(tp.lt, x)) continue;
                Vector y = tp.ht.apply(x);
                if (!tp.gt.rows() || !mc_pair_check(tp, {x, y, zeros(tp.mt.dim())}).ok()) continue;
                t = {x, y, zeros(tp.mt.dim())};
                break;
            }
            REQUIRE(mc_pair_check(tp, t).ok());
            ObstructionClass c = obstruction_pair(e, p.h, p.g, t);
            auto lift = lift_pair_if_unobstructed(e, p.h, p.g, t, c);
            CHECK(c.is_zero() == lift.has_value());
            CHECK(oracle::pair_lift_exists(e, p.h, p.g, t) == lift.has_value());
            if (lift) CHECK(mc_pair_check(tensor_pair(p.h, p.g, e.b), *lift).ok());
        }
    }
}

TEST_CASE("gauge equivalence decisions") {
    TensorDgla t = tensor_dgla(builtin_dgla("heis"), truncated_polynomial(4));
    oracle::Rng rng(12);
    for (int i = 0; i < 10; ++i) {
        Vector x = rng.homogeneous(*t.dgla->space(), 1);
        Vector a = rng.homogeneous(*t.dgla->space(), 0);
        Vector y = gauge_apply(t, a, x);
        GaugeEquivResult r = gauge_equiv_decide(t, x, y);
        REQUIRE(r.status == GaugeEquivResult::Status::Equivalent);
        REQUIRE(r.witness);
        CHECK(gauge_apply(t, *r.witness, x) == y);
    }
    // different classes in H¹ ⊗ m/m²
    GaugeEquivResult r = gauge_equiv_decide(t, el(t, {{"x⊗t", 1}}), el(t, {{"y⊗t", 1}}));
    CHECK(r.status == GaugeEquivResult::Status::NotEquivalent);
    CHECK_FALSE(r.certificate.empty());
}

TEST_CASE("abelian square-zero gauge equivalence is decided exactly") {
    oracle::Rng rng(13);
    for (const auto& name : {"acyclic", "abelian2"}) {
        auto l = builtin_dgla(name);
        TensorDgla t = tensor_dgla(l, square_zero({"s1", "s2"}));
        // d on L⁰ ⊗ m_A
        std::vector<Vector> cols;
        const auto& s = *t.dgla->space();
        for (std::size_t k = 0; k < s.dim(0); ++k) cols.push_back(t.dgla->d(unit(s.total_dim(), s.offset(0) + k)));
        const Matrix d0 = Matrix::from_columns(t.dim(), cols);
        for (int trial = 0; trial < 20; ++trial) {
            Matrix z = kernel_basis(t.dgla->differential());
            Vector x = zeros(t.dim()), y = zeros(t.dim());
            for (std::size_t c = 0; c < z.cols(); ++c)
                if (s.is_homogeneous_of(z.col(c), 1)) {
                    axpy(x, rng.scalar(), z.col(c));
                    axpy(y, rng.coin() ? Scalar(0) : rng.scalar(), z.col(c));
                }
            if (trial % 2 == 0) y = x;
            GaugeEquivResult r = gauge_equiv_decide(t, x, y);
            const bool expected = oracle::solvable(d0, sub(x, y)) || oracle::solvable(d0, sub(y, x));
            CHECK(r.status != GaugeEquivResult::Status::Undecided);
            CHECK((r.status == GaugeEquivResult::Status::Equivalent) == expected);
        }
    }
}

TEST_CASE("gauge equivalence needs Artinian coefficients") {
    TensorDgla t = tensor_dgla(builtin_dgla("heis"), epsilon(1));
    CHECK_THROWS_AS(gauge_equiv_decide(t, zeros(t.dim()), zeros(t.dim())), Error);
}

TEST_CASE("tangent dimensions") {
    CHECK(tangent_dims(builtin_dgla("abelian2"), 0).direct == 2);
    CHECK(tangent_dims(builtin_dgla("abelian2"), 0).agree());
    {
        BuiltinPair p = builtin_pair("sources-zero");
        TangentDims d = tangent_dims(p.h, p.g, 0);
        auto hm = compute_cohomology(p.h.target()->complex());
        CHECK(d.direct == hm.dim(0));
        CHECK(d.agree());
    }
    {
        BuiltinPair p = builtin_pair("target-zero");
        TangentDims d = tangent_dims(p.h, p.g, 0);
        auto hl = compute_cohomology(p.h.source()->complex());
        auto hn = compute_cohomology(p.g.source()->complex());
        CHECK(d.direct == hl.dim(1) + hn.dim(1));
        CHECK(d.agree());
    }
}
