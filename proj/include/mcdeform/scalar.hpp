#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mcdeform {

/// Exact rational scalar. GMP keeps every mpq_class in lowest terms with a
/// positive denominator after each arithmetic operation.
using Scalar = mpq_class;

/// Coordinates of an element with respect to an ordered basis.
using Vector = std::vector<Scalar>;

/// Parses "p", "-p" or "p/q". Throws Error(SchemaError) on malformed input or
/// a zero denominator; `field` is echoed in the message.
Scalar parse_scalar(std::string_view text, std::string_view field = "scalar");

/// "p" for integers, "p/q" otherwise.
std::string format_scalar(const Scalar& value);

Scalar factorial(unsigned n);

Vector zeros(std::size_t n);
bool is_zero(const Vector& v);

/// y += c * x
void axpy(Vector& y, const Scalar& c, const Vector& x);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& c, const Vector& v);
Vector negate(const Vector& v);

/// Unit basis vector e_i of length n.
Vector unit(std::size_t n, std::size_t i);

}  // namespace mcdeform
