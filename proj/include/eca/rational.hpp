#pragma once

// Exact arithmetic carrier for all analytic probabilities. Computations stay
// rational end-to-end; conversion to double happens only at output.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace eca {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// n! as a big integer. Values up to n = 64 are served from a lazily built
/// table; larger n fall back to direct computation.
BigInt factorial(unsigned n);

/// Binomial coefficient C(n, k); 0 when k > n.
BigInt binomial(unsigned n, unsigned k);

/// base^exp over big integers, with 0^0 == 1.
BigInt int_pow(const BigInt& base, unsigned exp);

/// base^exp over rationals, with 0^0 == 1.
Rational pow_rational(const Rational& base, unsigned exp);

/// Parses "p/q" or a decimal literal ("0.1", "1", "2.5e-3") into an exact
/// rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Renders exactly: integers as "n", fractions as "num/den".
std::string format_exact(const Rational& value);

/// Decimal rendering to the given number of significant digits.
std::string format_decimal(const Rational& value, int significant_digits = 12);
std::string format_decimal(double value, int significant_digits = 12);

}  // namespace eca
