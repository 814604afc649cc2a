/**
 * Exact arithmetic types shared by every module, plus the textual form used
 * in all file formats ("p/q" in lowest terms, bare "p" for integers).
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stresslab {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using RowVector = std::vector<Rational>;

class StressLabError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public StressLabError {
  public:
    using StressLabError::StressLabError;
};

/** Parses "p", "-p", "p/q"; throws ParseError on anything else or q = 0. */
Rational parse_rational(std::string_view text);

/** Canonical text: lowest terms, positive denominator, no "/1". */
std::string format_rational(const Rational& q);

Integer binomial(long n, long k);
long binomial_long(long n, long k);

inline int sign(const Rational& q) {
    return q.sign();
}

}  // namespace stresslab
