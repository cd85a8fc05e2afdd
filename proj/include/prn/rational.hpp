#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace prn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "42", "6/7", "0.25" or "7.2e-06" into an exact rational.
/// No floating point is involved at any step.
Rational parse_rational(std::string_view text);

/// "6/7" for non-integer values, "6" for integers.
std::string to_fraction_string(const Rational& value);

/// Exact decimal rendering with the given number of significant digits,
/// %g-style: plain notation for moderate magnitudes, scientific otherwise.
std::string to_decimal_string(const Rational& value, unsigned significant_digits = 17);

}  // namespace prn
