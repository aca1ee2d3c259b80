#include "doctest.h"

#include "mcdeform/builtins.hpp"
#include "mcdeform/error.hpp"
#include "mcdeform/path_object.hpp"
#include "support/oracles.hpp"

using namespace mcdeform;

namespace {

Vector basis(const Dgla& l, const std::string& label) {
    auto k = l.space()->find(label);
    REQUIRE_MESSAGE(k, label);
    return unit(l.dim(), *k);
}

PolyElement random_poly(oracle::Rng& rng, const Dgla& m, int deg, unsigned top) {
    PolyElement x;
    for (unsigned k = 0; k <= top; ++k) {
        if (m.space()->in_window(deg)) x.t[k] = rng.homogeneous(*m.space(), deg);
        if (m.space()->in_window(deg - 1)) x.dt[k] = rng.homogeneous(*m.space(), deg - 1);
    }
    x.prune();
    return x;
}

void expect_error(ErrorCode code, auto&& f) {
    try {
        f();
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

}  // namespace

TEST_CASE("poly_d signs") {
    auto a = builtin_dgla("acyclic");
    const Vector u = basis(*a, "u"), v = basis(*a, "v");
    PolyElement x;
    x.t[2] = u;
    PolyElement dx = poly_d(*a, x);
    CHECK(dx.t.at(2) == v);
    CHECK(dx.dt.at(1) == scale(2, u));
    CHECK(dx.t.size() == 1);

    PolyElement y;
    y.t[1] = v;
    PolyElement dy = poly_d(*a, y);
    CHECK(dy.t.empty());
    CHECK(dy.dt.at(0) == negate(v));  // (-1)^{|v|} v dt

    PolyElement z;
    z.dt[3] = u;
    CHECK(poly_d(*a, z).dt.at(3) == v);
    CHECK(poly_d(*a, PolyElement::constant(v)).is_zero());
}

TEST_CASE("poly_bracket signs") {
    auto h = builtin_dgla("heis");
    const Vector a = basis(*h, "a"), x = basis(*h, "x"), y = basis(*h, "y");
    PolyElement at, xdt;
    at.t[1] = a;
    xdt.dt[0] = x;
    PolyElement r = poly_bracket(*h, at, xdt);
    CHECK(r.t.empty());
    CHECK(r.dt.at(1) == y);
    PolyElement s = poly_bracket(*h, xdt, PolyElement::constant(a));
    CHECK(s.dt.at(0) == negate(y));  // [x,a] = -y, (-1)^{|a|} = 1
    CHECK(poly_bracket(*h, xdt, xdt).is_zero());
}

TEST_CASE("poly_d squares to zero and is a derivation") {
    oracle::Rng rng(21);
    for (const auto& name : {"heis", "endw", "acyclic", "abelian2"}) {
        CAPTURE(name);
        auto m = builtin_dgla(name);
        for (int trial = 0; trial < 5; ++trial)
            for (int dx = m->space()->dmin(); dx <= m->space()->dmax() + 1; ++dx)
                for (int dy = m->space()->dmin(); dy <= m->space()->dmax() + 1; ++dy) {
                    PolyElement x = random_poly(rng, *m, dx, 3), y = random_poly(rng, *m, dy, 3);
                    CHECK(poly_d(*m, poly_d(*m, x)).is_zero());
                    // d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]
                    PolyElement lhs = poly_d(*m, poly_bracket(*m, x, y));
                    PolyElement rhs = poly_add(poly_bracket(*m, poly_d(*m, x), y),
                                               poly_scale((dx % 2 == 0) ? 1 : -1, poly_bracket(*m, x, poly_d(*m, y))));
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("evaluation") {
    auto a = builtin_dgla("acyclic");
    const Vector u = basis(*a, "u"), v = basis(*a, "v");
    PolyElement x = PolyElement::constant(u);
    x.t[2] = u;
    x.dt[0] = v;
    for (const Scalar c : {Scalar(0), Scalar(1, 2), Scalar(1), Scalar(2)}) CHECK(evaluate(c, x, 2) == scale(1 + c * c, u));

    // e_c is a DGLA morphism K[t,dt] ⊗ M -> M
    oracle::Rng rng(22);
    auto h = builtin_dgla("heis");
    for (const Scalar c : {Scalar(0), Scalar(1, 2), Scalar(1), Scalar(2)})
        for (int trial = 0; trial < 5; ++trial) {
            PolyElement p = random_poly(rng, *h, 0, 2), q = random_poly(rng, *h, 1, 2);
            CHECK(evaluate(c, poly_bracket(*h, p, q), 6) == h->bracket(evaluate(c, p, 6), evaluate(c, q, 6)));
            CHECK(evaluate(c, poly_d(*h, p), 6) == h->d(evaluate(c, p, 6)));
        }
}

TEST_CASE("membership in H and the barycentric embedding") {
    BuiltinPair p = builtin_pair("heis-sub");
    auto l = p.h.source();
    auto m = p.h.target();
    const Vector b = basis(*l, "b");
    const Vector m0 = p.h.apply(b);
    HPairElement x{b, zeros(m->dim()), {}};
    x.m.t[1] = m0;  // e_1 = h(b), e_0 = 0 = g(0)
    CHECK(membership_H(p.h, p.g, x).ok());

    KElement k = barycentric_embed(p.h, p.g, x);
    CHECK(k.m1.t.at(1) == scale(Scalar(1, 2), m0));
    CHECK(k.m1.t.size() == 1);
    CHECK(k.m2.t.at(0) == scale(Scalar(1, 2), m0));
    CHECK(k.m2.t.at(1) == scale(Scalar(1, 2), m0));
    CHECK(membership_K(*m, p.h.matrix(), p.g.matrix(), k).ok());

    HPairElement bad = x;
    bad.m.t[1] = scale(2, m0);
    CHECK_FALSE(membership_H(p.h, p.g, bad).ok());
    expect_error(ErrorCode::NotVerified, [&] { barycentric_embed(p.h, p.g, bad); });

    // dt parts scale with the substitution
    HPairElement y = x;
    y.m.dt[0] = basis(*m, "a");
    KElement ky = barycentric_embed(p.h, p.g, y);
    CHECK(ky.m1.dt.at(0) == scale(Scalar(1, 2), basis(*m, "a")));
    CHECK(ky.m2.dt.at(0) == scale(Scalar(1, 2), basis(*m, "a")));

    KElement unglued = k;
    unglued.m2.t[0] = zeros(m->dim());
    unglued.m2.prune();
    CHECK_FALSE(membership_K(*m, p.h.matrix(), p.g.matrix(), unglued).ok());
}

TEST_CASE("truncated H with zero target is L ⊕ N") {
    BuiltinPair p = builtin_pair("target-zero");
    auto hl = compute_cohomology(p.h.source()->complex());
    auto hn = compute_cohomology(p.g.source()->complex());
    for (unsigned n = 1; n <= 3; ++n) {
        auto h = truncated_H_cohomology(p.h, p.g, n);
        for (int i = -1; i <= 2; ++i) CHECK(h.dim(i) == hl.dim(i) + hn.dim(i));
    }
}

TEST_CASE("truncated H for h = g = id on acyclic vanishes") {
    BuiltinPair p = builtin_pair("acyclic-id");
    for (unsigned n = 1; n <= 3; ++n) {
        Subcomplex s = truncated_H_complex(p.h, p.g, n);
        CHECK((s.complex.differential().matrix() * s.complex.differential().matrix()).is_zero());
        auto h = compute_cohomology(s.complex);
        for (const auto& [deg, c] : h.degrees()) CHECK(c.dim == 0);
        CHECK(oracle::cohomology_dims(*s.complex.space(), s.complex.differential().matrix()) ==
              std::vector<std::size_t>(s.complex.space()->dmax() - s.complex.space()->dmin() + 1, 0));
    }
    expect_error(ErrorCode::WindowTooSmall, [&] { truncated_H_complex(p.h, p.g, 0); });
}

TEST_CASE("truncated H matches the cone") {
    for (const auto& name : {"heis-sub", "id-obstructed", "endw-id"}) {
        CAPTURE(name);
        BuiltinPair p = builtin_pair(name);
        auto cone = compute_cohomology(cone_pair(p.h, p.g).complex);
        for (unsigned n : {2u, 3u}) {
            auto h = truncated_H_cohomology(p.h, p.g, n);
            for (int i = -2; i <= 3; ++i) CHECK(h.dim(i) == cone.dim(i));
        }
    }
}

TEST_CASE("MC triples map to K") {
    BuiltinPair p = builtin_pair("id-obstructed");
    TensorPair tp = tensor_pair(p.h, p.g, truncated_polynomial(3));
    const Vector x = tp.lt.pure(basis(*p.h.source(), "x"), unit(2, 1));
    McTriple t{x, x, zeros(tp.mt.dim())};
    KTriple k = map_triple_to_K(tp, t);
    CHECK(k.k.l == x);
    CHECK(k.k.n == x);
    CHECK(k.k.m1 == PolyElement::constant(tp.gt.apply(x)));
    CHECK(k.k.m2 == PolyElement::constant(tp.ht.apply(x)));
    CHECK(k.p == t.p);

    McTriple bad{x, zeros(tp.nt.dim()), zeros(tp.mt.dim())};
    expect_error(ErrorCode::NotVerified, [&] { map_triple_to_K(tp, bad); });
}

TEST_CASE("fiber product elements give MC triples") {
    BuiltinPair p = builtin_pair("id-obstructed");
    TensorPair tp = tensor_pair(p.h, p.g, truncated_polynomial(3));
    const Vector x = tp.lt.pure(basis(*p.h.source(), "x"), unit(2, 1));
    McTriple t = psi_fiber_to_pair(tp, x, x);
    CHECK(t.x == x);
    CHECK(t.y == x);
    CHECK(is_zero(t.p));
    CHECK(mc_pair_check(tp, t).ok());
    expect_error(ErrorCode::NotInFiberProduct, [&] { psi_fiber_to_pair(tp, x, zeros(tp.nt.dim())); });
    const Vector xt = tp.lt.pure(basis(*p.h.source(), "x"), unit(2, 0));
    expect_error(ErrorCode::NotVerified, [&] { psi_fiber_to_pair(tp, xt, xt); });
}
