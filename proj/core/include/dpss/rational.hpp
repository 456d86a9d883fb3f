#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace dpss {

using Integer = boost::multiprecision::cpp_int;

// Exact rational scalar.  Values are always kept in canonical form: lowest
// terms, positive denominator, zero as 0/1.  Division by zero throws.
using Rational = boost::multiprecision::cpp_rational;

// Parses rational text of the form "p" or "p/q" where p is a (possibly
// negative) decimal integer and q is a positive decimal integer.  Any other
// shape — decimals ("0.5"), zero or negative denominators, signs on q,
// whitespace, empty fields — yields nullopt.
std::optional<Rational> parse_rational(std::string_view text);

// Canonical text for a rational: "p" when the denominator is 1, otherwise
// "p/q" in lowest terms with q > 0.  parse_rational(format_rational(x)) == x.
std::string format_rational(const Rational& value);

// Floor and ceiling as exact integers.
Integer rational_floor(const Rational& value);
Integer rational_ceil(const Rational& value);

// value - modulus * floor(value / modulus); modulus must be positive.
Rational rational_mod(const Rational& value, const Rational& modulus);

}  // namespace dpss
