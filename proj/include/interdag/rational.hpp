#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace interdag {

// Exact arithmetic everywhere; doubles appear only in rendered output.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Renders as "p/q", or just "p" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

/// Fixed-point decimal rendering, rounded half away from zero.
std::string to_decimal_string(const Rational& r, int digits = 12);

/// Parses "p/q" or "p". Throws Error(DotSyntax) on malformed input.
Rational parse_rational(const std::string& text);

}  // namespace interdag
