#pragma once

#include <string>
#include <vector>

#include "mcdeform/dgla.hpp"

namespace oracle {

struct Mutation {
    std::string source;       // built-in name
    std::string description;  // which constant changed
    mcdeform::DglaPtr dgla;
};

/// Seeded single-constant corruptions of the built-in DGLAs that the brute
/// force oracle rejects. Candidates the constructor refuses are skipped.
std::vector<Mutation> mutation_corpus(std::uint32_t seed, std::size_t count);

}  // namespace oracle
