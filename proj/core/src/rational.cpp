#include "dpss/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>

namespace dpss {

namespace {

// A decimal integer: optional leading '-', then one or more digits.
// Rejects '+', whitespace, and empty strings.  allow_sign gates the '-'.
std::optional<Integer> parse_integer(std::string_view text, bool allow_sign) {
    if (text.empty()) return std::nullopt;
    std::size_t start = 0;
    if (text[0] == '-') {
        if (!allow_sign) return std::nullopt;
        start = 1;
        if (text.size() == 1) return std::nullopt;
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    }
    return Integer(std::string(text));
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto p = parse_integer(text, /*allow_sign=*/true);
        if (!p) return std::nullopt;
        return Rational(*p);
    }
    if (text.find('/', slash + 1) != std::string_view::npos) return std::nullopt;
    auto p = parse_integer(text.substr(0, slash), /*allow_sign=*/true);
    auto q = parse_integer(text.substr(slash + 1), /*allow_sign=*/false);
    if (!p || !q || *q == 0) return std::nullopt;
    return Rational(*p, *q);
}

std::string format_rational(const Rational& value) {
    const Integer& num = boost::multiprecision::numerator(value);
    const Integer& den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Integer rational_floor(const Rational& value) {
    const Integer& num = boost::multiprecision::numerator(value);
    const Integer& den = boost::multiprecision::denominator(value);
    Integer q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) --q;
    return q;
}

Integer rational_ceil(const Rational& value) {
    const Integer& num = boost::multiprecision::numerator(value);
    const Integer& den = boost::multiprecision::denominator(value);
    Integer q = num / den;
    if (num > 0 && q * den != num) ++q;
    return q;
}

Rational rational_mod(const Rational& value, const Rational& modulus) {
    if (modulus <= 0) throw std::invalid_argument("rational_mod requires a positive modulus");
    return value - modulus * Rational(rational_floor(value / modulus));
}

}  // namespace dpss
