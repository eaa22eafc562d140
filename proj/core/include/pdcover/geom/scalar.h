#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pdc {

/// Exact rational scalar. GMP keeps values canonical after every operation.
using Scalar = mpq_class;

/// Parse a decimal literal ("-1.25", "3e-2") or a rational "p/q".
/// Throws pdc::Error(InvalidInput) on malformed text or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// Integer text when the denominator is 1, "p/q" otherwise.
std::string format_scalar(const Scalar& s);

double to_double(const Scalar& s);

/// Round a double to the nearest multiple of 1/denom.
Scalar snap(double v, long denom);

int sign(const Scalar& s);

}  // namespace pdc
