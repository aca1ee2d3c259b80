#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcdeform/dgla.hpp"

namespace mcdeform {

/// Nilpotent graded-commutative dg algebra given on a basis of its maximal
/// ideal; the unit is never represented. With all degrees zero and d = 0 this
/// is the maximal ideal of a local Artinian K-algebra.
class NilpotentAlgebra {
public:
    /// `products[i * dim + j]` = e_i * e_j (full table, both orders).
    NilpotentAlgebra(std::string name, SpacePtr space, Matrix differential, std::vector<Vector> products);

    const std::string& name() const noexcept { return name_; }
    const SpacePtr& space() const noexcept { return space_; }
    std::size_t dim() const noexcept { return space_->total_dim(); }
    const Matrix& differential() const noexcept { return d_; }
    const Vector& basis_product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }
    Vector multiply(const Vector& a, const Vector& b) const;
    int degree(std::size_t i) const { return space_->degree_of(i); }

    /// True when every basis element has degree 0 and d = 0.
    bool is_artin() const;

    /// Smallest n with m^n = 0; nullopt if the power sequence stalls.
    std::optional<unsigned> nilpotency_index() const noexcept { return nu_; }
    /// m^k as columns spanning it (k >= 1); empty for k >= ν.
    const Matrix& power(unsigned k) const;
    /// Largest k with e_i in m^k.
    unsigned level(std::size_t i) const { return levels_.at(i); }

private:
    std::string name_;
    SpacePtr space_;
    Matrix d_;
    std::vector<Vector> products_;
    std::vector<Matrix> powers_;  // powers_[k-1] = m^k
    std::optional<unsigned> nu_;
    std::vector<unsigned> levels_;
};

using AlgebraPtr = std::shared_ptr<const NilpotentAlgebra>;

/// Commutativity (graded), associativity, nilpotency, degree of products,
/// and for dg algebras d² = 0, degree of d and Leibniz.
ValidationReport validate_artin(const NilpotentAlgebra& candidate);

/// Maximal ideal of K[t]/t^n: basis t, t², ..., t^{n-1}.
AlgebraPtr truncated_polynomial(unsigned n, const std::string& var = "t");
/// Square-zero ideal on the given labels (all products zero).
AlgebraPtr square_zero(const std::vector<std::string>& labels, const std::string& name = "square-zero");
/// Ω[n]: ω in degree -n, dω in degree -n+1, d(ω) = dω, all products zero.
AlgebraPtr omega(int n);
/// K·ε with deg ε = -n and ε² = 0.
AlgebraPtr epsilon(int n);

/// Surjection B -> A with kernel J annihilated by m_B. `section` picks the
/// designated preimage in m_B of each basis element of m_A.
struct SmallExtension {
    AlgebraPtr b;
    AlgebraPtr a;
    Matrix alpha;    // dim A x dim B
    Matrix kernel;   // dim B x dim J, columns span J
    Matrix section;  // dim B x dim A, alpha * section = id
};

ValidationReport validate_small_extension(const SmallExtension& e);

/// K[t]/t^{k+1} -> K[t]/t^k for k = 1..n.
std::vector<SmallExtension> small_extension_tower(unsigned n);

/// L ⊗ m_A with deg(x⊗a) = deg x + deg a,
/// d(x⊗a) = dx⊗a + (-1)^{deg x} x⊗da,
/// [x⊗a, y⊗b] = (-1)^{deg a deg y} [x,y]⊗ab.
/// Basis per total degree in (L index, A index) lexicographic order, labels
/// "x⊗a".
struct TensorDgla {
    DglaPtr base;
    AlgebraPtr coeff;
    DglaPtr dgla;
    std::vector<std::size_t> index;  // index[i * dim A + alpha]
    unsigned nu = 1;                 // brackets of nu elements vanish

    std::size_t dim() const { return dgla->dim(); }
    std::size_t at(std::size_t i, std::size_t alpha) const { return index[i * coeff->dim() + alpha]; }
    /// l ⊗ a for l in L, a in m_A.
    Vector pure(const Vector& l, const Vector& a) const;
    /// Coefficient of the basis element alpha of m_A, as an element of L.
    Vector component(const Vector& v, std::size_t alpha) const;
    /// f ⊗ id for a matrix f : L -> L' (dim L' x dim L).
    Matrix map_base(const Matrix& f, const TensorDgla& target) const;
    /// id ⊗ phi for phi : m_A -> m_A' (dim A' x dim A).
    Matrix map_coeff(const Matrix& phi, const TensorDgla& target) const;
    /// Quotient coordinates of v in L ⊗ (m_A / W) for W spanned by columns of w;
    /// zero iff v lies in L ⊗ W.
    Vector reduce_mod(const Vector& v, const Matrix& w) const;
};

/// Throws InvalidInput if the algebra is not nilpotent.
TensorDgla tensor_dgla(DglaPtr l, AlgebraPtr a);

/// "t²"-style superscript for the exponent.
std::string superscript(unsigned k);

}  // namespace mcdeform
