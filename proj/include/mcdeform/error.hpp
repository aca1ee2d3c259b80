#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcdeform {

enum class ErrorCode {
    DifferentialNotSquareZero,
    DegreeWindowViolation,
    WindowTooSmall,
    TargetMismatch,
    NotInjective,
    InvalidInput,
    DegreeMismatch,
    NotVerifiedMC,
    NotVerifiedTriple,
    NotVerified,
    InconsistentInput,
    BaseMismatch,
    NotInFiberProduct,
    SyntaxError,
    SchemaError,
    AxiomViolation,
    UnknownCommand,
    MissingDocument,
    ResourceLimit,
    Cancelled,
};

std::string_view error_code_name(ErrorCode code);

/// Domain error raised by every module. The message always names the
/// offending label, degree or field so that CLI reports stay actionable.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mcdeform
