#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace chowring {

/// Exact rational coefficient. All cycle arithmetic is carried out in this type.
using Rational = mpq_class;

std::string to_string(const Rational& q);

/// Parses "7", "-3", "+2", "5/4" or "-10/6" (result is canonicalized).
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);

/// Throws std::domain_error if q is not an integer fitting in int64.
std::int64_t to_int64(const Rational& q);

}  // namespace chowring
