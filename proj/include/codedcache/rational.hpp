#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace codedcache {

/// Exact rational arithmetic for the centralized rate identities.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3/10", "0.3", "-2" or "1e-1" into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// floor(value) for value >= 0.
std::uint64_t floor_to_uint(const Rational& value);

}  // namespace codedcache
