#pragma once

#include <map>

#include "mcdeform/maurer_cartan.hpp"

namespace mcdeform {

/// Element Σ m_i t^i + Σ n_j t^j dt of M[t,dt]; coefficients are coordinate
/// vectors in M. Zero coefficients are pruned by every operation.
struct PolyElement {
    std::map<unsigned, Vector> t;
    std::map<unsigned, Vector> dt;

    static PolyElement constant(const Vector& m);
    bool is_zero() const { return t.empty() && dt.empty(); }
    void prune();
    bool operator==(const PolyElement& other) const = default;
};

PolyElement poly_add(const PolyElement& x, const PolyElement& y);
PolyElement poly_scale(const Scalar& c, const PolyElement& x);

/// d(m p + n q dt) = (dm) p + (-1)^{|m|} m p' dt + (dn) q dt.
PolyElement poly_d(const Dgla& m, const PolyElement& x);

/// [m p, n q] = [m,n] pq, [m p, n q dt] = [m,n] pq dt,
/// [m p dt, n q] = (-1)^{|n|} [m,n] pq dt, dt² = 0.
PolyElement poly_bracket(const Dgla& m, const PolyElement& x, const PolyElement& y);

/// e_a(Σ m_i t^i + n_j t^j dt) = Σ m_i a^i.
Vector evaluate(const Scalar& a, const PolyElement& x, std::size_t dim);

/// Pullback along t -> c t + b (so dt -> c dt).
PolyElement substitute_affine(const PolyElement& x, const Scalar& c, const Scalar& b);

/// Total degree if homogeneous and nonzero.
std::optional<int> poly_degree(const Dgla& m, const PolyElement& x);

std::string format_poly(const Dgla& m, const PolyElement& x);

/// (l, n, m) with h(l) = e_1(m) and g(n) = e_0(m).
struct HPairElement {
    Vector l;
    Vector n;
    PolyElement m;
};

/// (l, n, m1, m2) with h(l) = e_1(m2), g(n) = e_0(m1); elements of H also
/// satisfy the gluing e_1(m1) = e_0(m2).
struct KElement {
    Vector l;
    Vector n;
    PolyElement m1;
    PolyElement m2;
};

/// Constraints for maps given as matrices into M (h : L -> M, g : N -> M).
ValidationReport membership_H(const Dgla& m, const Matrix& h, const Matrix& g, const HPairElement& x);
ValidationReport membership_H(const DglaMorphism& h, const DglaMorphism& g, const HPairElement& x);
/// K constraints, plus the gluing condition unless `gluing` is false.
ValidationReport membership_K(const Dgla& m, const Matrix& h, const Matrix& g, const KElement& x,
                              bool gluing = true);

/// (l, n, m(t/2), m((s+1)/2)). Throws NotVerified if x is not in H.
KElement barycentric_embed(const DglaMorphism& h, const DglaMorphism& g, const HPairElement& x);

/// Finite subcomplex T_N(M) of M[t,dt]: t-part exponents <= N, dt-part
/// exponents <= N - 1. Labels "x", "x·t²", "x·dt", "x·t·dt".
struct TruncatedPath {
    ChainComplex complex;
    std::vector<std::pair<bool, unsigned>> slot;  // per basis element: (is dt, exponent)
    std::vector<std::size_t> coeff;               // per basis element: index in M
};
TruncatedPath truncated_path_complex(const ChainComplex& m, unsigned n);

/// The kernel of (h - e_1, g - e_0) inside L ⊕ N ⊕ T_N(M) as a complex.
/// Throws WindowTooSmall for N < 1.
Subcomplex truncated_H_complex(const DglaMorphism& h, const DglaMorphism& g, unsigned n);
CohomologyResult truncated_H_cohomology(const DglaMorphism& h, const DglaMorphism& g, unsigned n);

/// K-element G(x, y) = (x, y, g(y), h(x)) with the linking parameter p.
struct KTriple {
    KElement k;
    Vector p;
};

/// Checks MC of every component, the K constraints and e_0(k) = e^p * e_1(k);
/// throws NotVerified if the input triple or the output fails.
KTriple map_triple_to_K(const TensorPair& tp, const McTriple& t);

/// (l, n) ↦ (l, n, 0). Throws NotInFiberProduct if h(l) ≠ g(n), NotVerified
/// if the result is not an MC triple.
McTriple psi_fiber_to_pair(const TensorPair& tp, const Vector& l, const Vector& n);

}  // namespace mcdeform
