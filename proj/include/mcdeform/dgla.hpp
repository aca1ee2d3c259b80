#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mcdeform/graded.hpp"
#include "mcdeform/report.hpp"

namespace mcdeform {

/// Structure constant [e_left, e_right] for global basis indices left <= right.
struct BracketEntry {
    std::size_t left;
    std::size_t right;
    Vector value;
};

/// Differential graded Lie algebra on a finite graded space.
///
/// Only brackets with left <= right are stored; [e_b, e_a] for a < b is
/// derived as -(-1)^{|a||b|} [e_a, e_b]. Construction checks shapes and
/// rejects duplicate entries but not the axioms: use validate_dgla.
class Dgla {
public:
    Dgla(std::string name, SpacePtr space, Matrix differential, std::vector<BracketEntry> entries);

    const std::string& name() const noexcept { return name_; }
    const SpacePtr& space() const noexcept { return space_; }
    std::size_t dim() const noexcept { return space_->total_dim(); }
    const Matrix& differential() const noexcept { return d_; }
    /// Nonzero stored entries, sorted by (left, right).
    const std::vector<BracketEntry>& entries() const noexcept { return entries_; }

    Vector d(const Vector& v) const { return d_.apply(v); }
    Vector bracket(const Vector& a, const Vector& b) const;
    /// [e_i, e_j] for any ordered pair of basis indices.
    Vector basis_bracket(std::size_t i, std::size_t j) const;
    bool is_abelian() const noexcept { return entries_.empty(); }

    /// Underlying complex; throws if d is not a degree-1 square-zero map.
    ChainComplex complex() const { return ChainComplex(space_, d_); }

    int basis_degree(std::size_t i) const { return space_->degree_of(i); }

private:
    void add_to(Vector& out, std::size_t i, std::size_t j, const Scalar& c) const;

    std::string name_;
    SpacePtr space_;
    Matrix d_;
    std::vector<BracketEntry> entries_;
    // table_[i * dim + j]: sparse [e_i, e_j], both orders expanded
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> table_;
};

using DglaPtr = std::shared_ptr<const Dgla>;

/// Degree-0 linear map between DGLAs (matrix: target dim x source dim).
class DglaMorphism {
public:
    DglaMorphism(DglaPtr source, DglaPtr target, Matrix map);

    static DglaMorphism identity(DglaPtr l);
    static DglaMorphism zero(DglaPtr source, DglaPtr target);

    const DglaPtr& source() const noexcept { return source_; }
    const DglaPtr& target() const noexcept { return target_; }
    const Matrix& matrix() const noexcept { return map_; }
    Vector apply(const Vector& v) const { return map_.apply(v); }
    /// Throws DegreeWindowViolation if the map is not degree preserving.
    GradedMap graded() const { return GradedMap(source_->space(), target_->space(), 0, map_); }

private:
    DglaPtr source_;
    DglaPtr target_;
    Matrix map_;
};

/// Checks d²=0, degree of d and of every structure constant, graded
/// antisymmetry, graded Jacobi and Leibniz on all basis tuples.
ValidationReport validate_dgla(const Dgla& candidate);

/// Jacobi check over all basis triples. The parallel kernel splits the
/// outermost index across OpenMP threads and merges in index order, so both
/// kernels return identical reports.
ValidationReport jacobi_violations_serial(const Dgla& l);
ValidationReport jacobi_violations_parallel(const Dgla& l);

/// Degree preservation, chain-map property and bracket preservation on all
/// basis elements and pairs.
ValidationReport validate_morphism(const DglaMorphism& candidate);

DglaPtr zero_dgla(const std::string& name = "zero");

/// L x N with componentwise structure; labels "L:x", "N:y" (prefixes
/// configurable).
DglaPtr product_dgla(const Dgla& l, const Dgla& n, const std::string& prefix_l = "L",
                     const std::string& prefix_n = "N");

/// Sub-DGLA spanned by per-degree bases (columns in degree-block
/// coordinates of the parent). Throws InvalidInput if not closed under d or
/// the bracket.
struct SubDgla {
    DglaPtr dgla;
    Matrix inclusion;  // parent dim x sub dim
};
SubDgla sub_dgla(const Dgla& parent, const std::map<int, Matrix>& basis_by_degree, const std::string& name);

/// L' = L ⊕ K·δ in degree 1 with [δ, v]' = dv and d'δ = 0.
DglaPtr adjoin_d(const Dgla& l);

/// Fiber product L ×_M N = ker(h - g) ⊂ L ⊕ N, with a per-degree report on
/// whether g - h : N ⊕ L -> M is surjective.
struct FiberProduct {
    DglaPtr dgla;
    Matrix inclusion;                  // (dim L + dim N) x dim K, product coordinates
    std::map<int, bool> surjective;    // per degree of M
    bool surjective_everywhere() const;
};
FiberProduct fiber_product_dgla(const DglaMorphism& h, const DglaMorphism& g);

/// Degree -1 map i : L -> M (matrix: dim M x dim L).
struct CartanHomotopyCandidate {
    DglaPtr source;
    DglaPtr target;
    Matrix map;
};

/// Checks i([a,b]) = [i(a), d'i(b)] and [i(a), i(b)] = 0 on all basis pairs,
/// with d'i(b) = d_M(i(b)) + i(d_L(b)).
ValidationReport cartan_homotopy_check(const CartanHomotopyCandidate& c);

}  // namespace mcdeform
