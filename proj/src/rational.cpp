#include "stresslab/rational.hpp"

#include <cctype>

namespace stresslab {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

Integer parse_integer(std::string_view s) {
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num)) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    if (slash == std::string_view::npos) return Rational(parse_integer(num));
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(den)) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    Integer d = parse_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(num), d);
}

std::string format_rational(const Rational& q) {
    const Integer& den = boost::multiprecision::denominator(q);
    if (den == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

long binomial_long(long n, long k) {
    return binomial(n, k).convert_to<long>();
}

}  // namespace stresslab
