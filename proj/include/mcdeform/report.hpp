#pragma once

#include <string>
#include <vector>

namespace mcdeform {

/// One failed axiom instance, witnessed by basis labels.
struct Violation {
    std::string axiom;
    std::vector<std::string> witness;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    void add(std::string axiom, std::vector<std::string> witness, std::string detail) {
        violations.push_back({std::move(axiom), std::move(witness), std::move(detail)});
    }
    void append(const ValidationReport& other) {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }
};

}  // namespace mcdeform
