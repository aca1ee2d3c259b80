#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcdeform/document.hpp"

namespace mcdeform {

std::vector<std::string> command_names();

/// Parsed command line. Document slots hold a file path or "builtin:NAME".
struct CliOptions {
    std::string command;
    bool json = false;
    std::size_t budget = 10000;
    unsigned trunc = 2;
    std::optional<unsigned> tower;
    int shift = 0;
    std::map<std::string, std::string> slots;  // "dgla", "pair", "morphism", "element", ...
    std::vector<std::string> positional;       // documents assigned to slots by kind
    bool list = false;
    std::optional<std::string> show;
};

/// Bad flags or missing arguments; exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SessionReport {
    json body;
    int exit_code = 0;

    /// Canonical JSON, or "key: value" lines.
    std::string render(bool as_json) const;
};

/// Never throws: domain errors become {"error": {code, message}} with exit
/// status 1, usage errors and UnknownCommand/MissingDocument exit with 2.
SessionReport run_command(const CliOptions& options);

/// MCDEFORM_MAX_DIM, default 512.
std::size_t max_dim_from_env();

}  // namespace mcdeform
