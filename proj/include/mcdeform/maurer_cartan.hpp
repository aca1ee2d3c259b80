#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcdeform/artin.hpp"
#include "mcdeform/cone.hpp"

namespace mcdeform {

// All elements below are coordinate vectors in a TensorDgla L ⊗ m_A.

/// dx + ½[x,x]. Throws DegreeMismatch unless x has total degree 1.
Vector mc_residual(const TensorDgla& t, const Vector& x);
bool is_mc(const TensorDgla& t, const Vector& x);

/// e^a * x = x + Σ_{n≥0} [a,-]^n / (n+1)! ([a,x] - da).
Vector gauge_apply(const TensorDgla& t, const Vector& a, const Vector& x);

/// a • b with e^a e^b = e^{a•b}, by the Dynkin series truncated at bracket
/// length ν - 1.
Vector bch_product(const TensorDgla& t, const Vector& a, const Vector& b);

/// a = dh + [x,h] for h of degree -1; x must be MC.
Vector stabilizer_element(const TensorDgla& t, const Vector& x, const Vector& h);

/// Obstruction class in H²(L) ⊗ J or H²(C_(h,g)) ⊗ J.
struct ObstructionClass {
    std::shared_ptr<const CohomologyResult> cohomology;  // of L or of the cone
    Matrix coords;                   // dim H² x dim J
    std::vector<Vector> cocycles;    // one per J basis vector, in L or cone coordinates
    std::vector<std::string> j_labels;
    Vector raw;                      // cocycle in the tensor over B (single case)

    bool is_zero() const { return coords.is_zero(); }
    /// Nonzero coordinates keyed "class⊗j".
    std::vector<std::pair<std::string, Scalar>> labelled() const;
};

/// Cocycle dx̃ + ½[x̃,x̃] of the lift x̃ = section(x), projected to H²(L)⊗J.
/// `section` overrides the designated one (dim B x dim A, alpha ∘ section = id).
/// Throws NotVerifiedMC if x is not MC over A.
ObstructionClass obstruction_single(const SmallExtension& e, const DglaPtr& l, const Vector& x,
                                    const Matrix* section = nullptr);

/// x̃ - q with dq = h when the class vanishes; nullopt otherwise. Throws
/// InconsistentInput if `cls` does not match the recomputed class.
std::optional<Vector> lift_if_unobstructed(const SmallExtension& e, const DglaPtr& l, const Vector& x,
                                           const ObstructionClass& cls, const Matrix* section = nullptr);

/// A pair h : L -> M, g : N -> M tensored with one coefficient algebra.
struct TensorPair {
    DglaMorphism h;
    DglaMorphism g;
    TensorDgla lt;
    TensorDgla nt;
    TensorDgla mt;
    Matrix ht;  // h ⊗ id
    Matrix gt;  // g ⊗ id
};

TensorPair tensor_pair(const DglaMorphism& h, const DglaMorphism& g, const AlgebraPtr& a);

/// (x, y, p) with x ∈ (L⊗m_A)¹, y ∈ (N⊗m_A)¹, p ∈ (M⊗m_A)⁰.
struct McTriple {
    Vector x;
    Vector y;
    Vector p;
};

McTriple zero_triple(const TensorPair& tp);

/// Both MC equations and g(y) = e^p * h(x).
ValidationReport mc_pair_check(const TensorPair& tp, const McTriple& t);

/// (e^a*x, e^b*y, g(b) • p • (-h(a))).
McTriple gauge_apply_pair(const TensorPair& tp, const Vector& a, const Vector& b, const McTriple& t);

/// Cocycle (l, k, r) with r = -g(ỹ) + e^q * h(x̃), projected to H²(C_(h,g))⊗J.
/// Throws NotVerifiedTriple if t fails mc_pair_check.
ObstructionClass obstruction_pair(const SmallExtension& e, const DglaMorphism& h, const DglaMorphism& g,
                                  const McTriple& t, const Matrix* section = nullptr);

/// (x̃ - u, ỹ - v, q - z) with D(u, v, z) = (l, k, r) when the class vanishes.
std::optional<McTriple> lift_pair_if_unobstructed(const SmallExtension& e, const DglaMorphism& h,
                                                  const DglaMorphism& g, const McTriple& t,
                                                  const ObstructionClass& cls, const Matrix* section = nullptr);

/// Checks x2 = e^a*x1, y2 = e^b*y1 and p2 = g(b) • T • p1 • (-h(a)) with
/// T = dc + [g(y1), c] for c ∈ (M⊗m_A)^{-1}.
ValidationReport verify_extended_equivalence(const TensorPair& tp, const McTriple& t1, const McTriple& t2,
                                             const Vector& a, const Vector& b, const Vector& c);

struct GaugeEquivBudget {
    std::size_t max_nodes = 10000;
    const std::atomic<bool>* cancel = nullptr;
};

struct GaugeEquivResult {
    enum class Status { Equivalent, NotEquivalent, Undecided };
    Status status = Status::Undecided;
    std::optional<Vector> witness;  // a with e^a * x = y, verified
    std::string certificate;
    std::size_t nodes = 0;
};

/// Staged search along m_A ⊃ m_A² ⊃ ...; see README for the exact
/// soundness conditions of NotEquivalent. Throws BaseMismatch if the
/// vectors do not belong to t, Cancelled if the token fires.
GaugeEquivResult gauge_equiv_decide(const TensorDgla& t, const Vector& x, const Vector& y,
                                    const GaugeEquivBudget& budget = {});

struct TangentDims {
    std::size_t direct = 0;        // MC over K·ε modulo gauge, by linear algebra
    std::size_t cohomological = 0; // dim H^{1+n}
    bool agree() const { return direct == cohomological; }
};

TangentDims tangent_dims(const DglaPtr& l, int shift);
TangentDims tangent_dims(const DglaMorphism& h, const DglaMorphism& g, int shift);

}  // namespace mcdeform
