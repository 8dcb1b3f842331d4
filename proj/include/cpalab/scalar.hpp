#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cpalab {

/// Exact rational number. GMP keeps it reduced with a positive denominator.
using Scalar = mpq_class;
using Integer = mpz_class;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& value);

/// Accepts "p", "-p", "p/q"; the result is canonicalized.
Scalar parse_scalar(std::string_view text);

inline bool is_zero(const Scalar& value) { return sgn(value) == 0; }

}  // namespace cpalab
