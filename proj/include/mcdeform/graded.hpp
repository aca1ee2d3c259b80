#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mcdeform/matrix.hpp"

namespace mcdeform {

/// Finite-dimensional Z-graded vector space with a finite degree window
/// [dmin, dmax] and labelled bases per degree. Elements are coordinate
/// vectors in the flattened basis: degrees ascending, labels in order.
class GradedSpace {
public:
    /// `labels[k]` is the basis of degree dmin + k. Labels must be unique
    /// across all degrees. An empty window (dmin > dmax) is the zero space.
    GradedSpace(int dmin, int dmax, std::vector<std::vector<std::string>> labels);

    static std::shared_ptr<const GradedSpace> make(int dmin, int dmax,
                                                   std::vector<std::vector<std::string>> labels);
    /// Builds the window from the given degrees; degrees absent from the map
    /// are zero.
    static std::shared_ptr<const GradedSpace> from_map(const std::map<int, std::vector<std::string>>& labels);

    int dmin() const noexcept { return dmin_; }
    int dmax() const noexcept { return dmax_; }
    bool in_window(int deg) const noexcept { return deg >= dmin_ && deg <= dmax_; }

    std::size_t dim(int deg) const;
    std::size_t offset(int deg) const;
    std::size_t total_dim() const noexcept { return degree_of_.size(); }

    int degree_of(std::size_t index) const { return degree_of_.at(index); }
    const std::string& label(std::size_t index) const { return flat_labels_.at(index); }
    const std::vector<std::string>& labels(int deg) const;
    std::optional<std::size_t> find(const std::string& label) const;

    /// Restriction of v to degree `deg` (length dim(deg)).
    Vector component(const Vector& v, int deg) const;
    /// Embeds coordinates of degree `deg` into the full space.
    Vector embed(const Vector& part, int deg) const;

    /// Degree of a nonzero homogeneous vector; nullopt if v = 0 or mixed.
    std::optional<int> homogeneous_degree(const Vector& v) const;
    /// True if v is zero or homogeneous of degree `deg`.
    bool is_homogeneous_of(const Vector& v, int deg) const;

    /// "2x - 1/2y"-style rendering using basis labels; "0" for zero.
    std::string format(const Vector& v) const;

    bool operator==(const GradedSpace& other) const;

private:
    int dmin_;
    int dmax_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::size_t> offsets_;
    std::vector<int> degree_of_;
    std::vector<std::string> flat_labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

/// Element of a graded space: coordinates plus an optional declared degree.
struct GradedElement {
    SpacePtr space;
    Vector coords;
    std::optional<int> degree;
};

/// Linear map of degree n between graded spaces, stored as one dense matrix
/// on the flattened bases. Construction rejects entries that do not map
/// degree i into degree i + n.
class GradedMap {
public:
    GradedMap(SpacePtr source, SpacePtr target, int degree, Matrix full);

    static GradedMap zero(SpacePtr source, SpacePtr target, int degree);
    static GradedMap identity(SpacePtr space);

    const SpacePtr& source() const noexcept { return source_; }
    const SpacePtr& target() const noexcept { return target_; }
    int degree() const noexcept { return degree_; }
    const Matrix& matrix() const noexcept { return full_; }

    /// Matrix from source degree i to target degree i + n.
    Matrix block(int i) const;

    Vector apply(const Vector& v) const { return full_.apply(v); }

    /// (*this) after `first`.
    GradedMap after(const GradedMap& first) const;

private:
    SpacePtr source_;
    SpacePtr target_;
    int degree_;
    Matrix full_;
};

/// Differential graded vector space. Construction checks d∘d = 0.
class ChainComplex {
public:
    ChainComplex(SpacePtr space, Matrix differential);

    const SpacePtr& space() const noexcept { return space_; }
    const GradedMap& differential() const noexcept { return d_; }
    Vector d(const Vector& v) const { return d_.apply(v); }
    /// Block d^i : V^i -> V^{i+1}.
    Matrix d_block(int i) const { return d_.block(i); }

private:
    SpacePtr space_;
    GradedMap d_;
};

struct DegreeCohomology {
    int degree = 0;
    std::size_t dim = 0;
    std::size_t cycles = 0;       // dim Z^i
    std::size_t boundaries = 0;   // dim B^i
    std::vector<Vector> representatives;  // full-space coordinates
    Matrix projection;            // dim x dim V^i, kills B^i, P * rep_k = e_k
};

class CohomologyResult {
public:
    CohomologyResult(SpacePtr space, std::map<int, DegreeCohomology> degrees)
        : space_(std::move(space)), degrees_(std::move(degrees)) {}

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t dim(int deg) const;
    const DegreeCohomology& at(int deg) const;
    const std::map<int, DegreeCohomology>& degrees() const noexcept { return degrees_; }

    /// Class coordinates of a cycle of degree `deg` (given in full-space
    /// coordinates).
    Vector classify(int deg, const Vector& cycle) const;
    /// Human-readable name of the k-th class in degree `deg`: the
    /// representative's expression, bracketed when it has several terms.
    std::string class_label(int deg, std::size_t k) const;

private:
    SpacePtr space_;
    std::map<int, DegreeCohomology> degrees_;
};

/// Cohomology via exact row reduction. Throws DifferentialNotSquareZero if
/// d∘d ≠ 0.
CohomologyResult compute_cohomology(const ChainComplex& complex);

/// Hom^*(V, W) restricted to map degrees in [nmin, nmax], with
/// d'(f) = d_W f - (-1)^{deg f} f d_V. Basis: elementary maps "[v->w]".
/// Throws WindowTooSmall if no Hom^n in the window is nonzero.
ChainComplex hom_complex(const ChainComplex& v, const ChainComplex& w, int nmin, int nmax);

/// Htp(V, W) = Hom^*(V[1], W).
ChainComplex htp_complex(const ChainComplex& v, const ChainComplex& w, int nmin, int nmax);

/// V[n]: V[n]^i = V^{i+n}, differential (-1)^n d.
ChainComplex shift(const ChainComplex& v, int n);

/// Direct sum complex; labels prefixed "<prefix>:".
ChainComplex direct_sum(const ChainComplex& a, const std::string& prefix_a, const ChainComplex& b,
                        const std::string& prefix_b);

struct Subcomplex {
    ChainComplex complex;
    Matrix inclusion;  // ambient total dim x sub total dim
};

/// Subcomplex spanned by per-degree bases, given as columns in the
/// coordinates of the ambient degree block. Basis labels are the formatted
/// ambient expressions. Throws InvalidInput if the span is not d-closed.
Subcomplex subcomplex(const ChainComplex& ambient, const std::map<int, Matrix>& basis_by_degree);

/// Map on cohomology induced by a degree-0 chain map, per degree
/// (target class dim x source class dim).
std::map<int, Matrix> induced_on_cohomology(const GradedMap& f, const CohomologyResult& src,
                                            const CohomologyResult& tgt);

/// f d_V = d_W f for a degree-0 map.
bool is_chain_map(const GradedMap& f, const ChainComplex& src, const ChainComplex& tgt);

}  // namespace mcdeform
