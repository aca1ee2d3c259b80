#include "mcdeform/scalar.hpp"

#include <cctype>

#include "mcdeform/error.hpp"

namespace mcdeform {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DifferentialNotSquareZero: return "DifferentialNotSquareZero";
        case ErrorCode::DegreeWindowViolation: return "DegreeWindowViolation";
        case ErrorCode::WindowTooSmall: return "WindowTooSmall";
        case ErrorCode::TargetMismatch: return "TargetMismatch";
        case ErrorCode::NotInjective: return "NotInjective";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::NotVerifiedMC: return "NotVerifiedMC";
        case ErrorCode::NotVerifiedTriple: return "NotVerifiedTriple";
        case ErrorCode::NotVerified: return "NotVerified";
        case ErrorCode::InconsistentInput: return "InconsistentInput";
        case ErrorCode::BaseMismatch: return "BaseMismatch";
        case ErrorCode::NotInFiberProduct: return "NotInFiberProduct";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::AxiomViolation: return "AxiomViolation";
        case ErrorCode::UnknownCommand: return "UnknownCommand";
        case ErrorCode::MissingDocument: return "MissingDocument";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::Cancelled: return "Cancelled";
    }
    return "Unknown";
}

namespace {

bool valid_integer(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text, std::string_view field) {
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::SchemaError,
                    "field '" + std::string(field) + "': " + why + " (got \"" + std::string(text) + "\")");
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
        fail("expected a rational literal \"p\" or \"p/q\"");
    std::string n(num[0] == '+' ? num.substr(1) : num);
    mpz_class p(n, 10), q(std::string(den), 10);
    if (q == 0) fail("zero denominator");
    Scalar r(p, q);
    r.canonicalize();
    return r;
}

std::string format_scalar(const Scalar& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Scalar factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Scalar(f);
}

Vector zeros(std::size_t n) { return Vector(n, Scalar(0)); }

bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

void axpy(Vector& y, const Scalar& c, const Vector& x) {
    if (c == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] += c * x[i];
}

Vector add(const Vector& a, const Vector& b) {
    Vector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vector sub(const Vector& a, const Vector& b) {
    Vector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vector scale(const Scalar& c, const Vector& v) {
    Vector r = v;
    for (auto& x : r) x *= c;
    return r;
}

Vector negate(const Vector& v) { return scale(Scalar(-1), v); }

Vector unit(std::size_t n, std::size_t i) {
    Vector v = zeros(n);
    v[i] = 1;
    return v;
}

}  // namespace mcdeform
