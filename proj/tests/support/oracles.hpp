#pragma once

// Reference computations written independently of the library kernels.
// They work on raw structure constants and use fraction-free elimination.

#include <random>
#include <string>
#include <vector>

#include "mcdeform/dgla.hpp"

namespace oracle {

using mcdeform::Dgla;
using mcdeform::Matrix;
using mcdeform::Scalar;
using mcdeform::Vector;

/// Rank by Bareiss elimination on an integer copy of each row.
std::size_t rank(const Matrix& m);

/// True iff a x = b has a solution (rank test).
bool solvable(const Matrix& a, const Vector& b);

/// Full table [e_i, e_j] expanded from the stored entries.
std::vector<std::vector<Vector>> bracket_table(const Dgla& l);

/// Name of the first failing axiom found by brute force, "" if none.
std::string first_axiom_failure(const Dgla& l);

/// dim H^i = dim V^i - rank d^i - rank d^{i-1}, from the flat differential.
std::vector<std::size_t> cohomology_dims(const mcdeform::GradedSpace& s, const Matrix& d);

/// Random rationals with small numerators and denominators in {1, 2, 3}.
class Rng {
public:
    explicit Rng(std::uint32_t seed) : gen_(seed) {}
    Scalar scalar(int bound = 3, bool fractions = true);
    Scalar nonzero(int bound = 3);
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    bool coin() { return integer(0, 1) == 1; }
    /// Random vector supported on the basis elements of degree `deg`.
    Vector homogeneous(const mcdeform::GradedSpace& s, int deg, int bound = 3);
    /// Random invertible n x n matrix (unit lower times unit upper).
    Matrix invertible(std::size_t n);
    std::mt19937& engine() { return gen_; }

private:
    std::mt19937 gen_;
};

}  // namespace oracle
