#pragma once

#include <string>
#include <vector>

#include "mcdeform/dgla.hpp"

namespace mcdeform {

inline constexpr const char* kConeConvention = "iacono-cone-v1";

/// Suspended mapping cone as a plain complex. Degree i holds, in this order,
/// the first source in degree i, the second source in degree i (pair cones
/// only) and the target in degree i - 1. The cone carries no bracket.
struct ConeComplex {
    enum class Kind { Single, Pair };

    Kind kind = Kind::Single;
    ChainComplex complex;
    // Inclusions of the pieces (cone dim x piece dim). For the target piece
    // the column index is the unshifted basis index of M.
    Matrix embed_l;
    Matrix embed_n;
    Matrix embed_m;

    Vector assemble(const Vector& l, const Vector& n, const Vector& m) const;
    Vector part_l(const Vector& c) const { return embed_l.transpose().apply(c); }
    Vector part_n(const Vector& c) const { return embed_n.transpose().apply(c); }
    Vector part_m(const Vector& c) const { return embed_m.transpose().apply(c); }
};

/// Cone of a degree-0 chain map h : L -> M with δ(l, m) = (dl, -dm + h(l)).
ConeComplex cone_of_chain_map(const ChainComplex& l, const ChainComplex& m, const Matrix& h,
                              const std::string& prefix_l = "L", const std::string& prefix_m = "M");

/// Pair cone of chain maps h : L -> M, g : N -> M with
/// D(l, n, m) = (dl, dn, -dm - g(n) + h(l)).
ConeComplex cone_of_chain_maps(const ChainComplex& l, const ChainComplex& n, const ChainComplex& m, const Matrix& h,
                               const Matrix& g, const std::string& prefix_l = "L", const std::string& prefix_n = "N",
                               const std::string& prefix_m = "M");

ConeComplex cone_single(const DglaMorphism& h);

/// Throws TargetMismatch if h and g have different targets.
ConeComplex cone_pair(const DglaMorphism& h, const DglaMorphism& g);

/// h - g : L x N -> M on the product DGLA (labels "L:x", "N:y").
DglaMorphism difference_on_product(const DglaMorphism& h, const DglaMorphism& g);

struct GammaMap {
    ConeComplex source;    // C_(h,g)
    ChainComplex coker;    // coker(h), basis "[m]" for complement vectors of im h
    Matrix pi;             // M -> coker(h)
    ConeComplex target;    // C_{π∘g}, pieces "N:" and "Q:"
    GradedMap map;         // (l, n, m) -> (-n, π(m))
};

/// Quotient map to the cone of π∘g : N -> coker(h). Throws NotInjective if
/// h has a kernel in some degree.
GammaMap gamma_quotient_map(const DglaMorphism& h, const DglaMorphism& g);

struct SwapMap {
    ConeComplex source;  // C_(h,g)
    ConeComplex target;  // C_(g,h), pieces "N:", "L:", "M:"
    GradedMap map;       // (l, n, m) -> (-n, -l, m) in target order
};

SwapMap swap_iso(const DglaMorphism& h, const DglaMorphism& g);

/// Exactness of H(C) -> H(L x N) -> H(M) -> H(C)[1] checked by ranks and by
/// vanishing of consecutive composites.
struct LongExactSequenceReport {
    struct Node {
        int degree;
        std::string name;   // "H(C)", "H(LxN)", "H(M)"
        std::size_t dim;
        std::size_t rank_in;
        std::size_t rank_out;
        bool composite_zero;
        bool exact() const { return composite_zero && rank_in + rank_out == dim; }
    };
    std::vector<Node> nodes;
    bool exact() const;
};

LongExactSequenceReport long_exact_sequence_check(const DglaMorphism& h, const DglaMorphism& g);

}  // namespace mcdeform
