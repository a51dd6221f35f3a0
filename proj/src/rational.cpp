#include "eca/rational.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <mutex>
#include <stdexcept>

namespace eca {

namespace {

constexpr unsigned kFactorialTableSize = 65;

const std::array<BigInt, kFactorialTableSize>& factorial_table() {
  static std::once_flag once;
  static std::array<BigInt, kFactorialTableSize> table;
  std::call_once(once, [] {
    table[0] = 1;
    for (unsigned n = 1; n < kFactorialTableSize; ++n) table[n] = table[n - 1] * n;
  });
  return table;
}

}  // namespace

BigInt factorial(unsigned n) {
  if (n < kFactorialTableSize) return factorial_table()[n];
  BigInt result = factorial_table()[kFactorialTableSize - 1];
  for (unsigned i = kFactorialTableSize; i <= n; ++i) result *= i;
  return result;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n-k+i, i) after each step
  }
  return result;
}

BigInt int_pow(const BigInt& base, unsigned exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    exp >>= 1u;
    if (exp != 0) b *= b;
  }
  return result;
}

Rational pow_rational(const Rational& base, unsigned exp) {
  Rational result = 1;
  Rational b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    exp >>= 1u;
    if (exp != 0) b *= b;
  }
  return result;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty()) throw std::invalid_argument("malformed fraction: " + text);
    try {
      BigInt p(num);
      BigInt q(den);
      if (q == 0) throw std::invalid_argument("zero denominator: " + text);
      return Rational(p, q);
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("malformed fraction: " + text);
    }
  }

  // Decimal literal: [-]digits[.digits][(e|E)[+-]digits]
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt mantissa = 0;
  long frac_digits = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) ++frac_digits;
      any_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_neg = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) throw std::invalid_argument("malformed exponent: " + text);
    for (; pos < text.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw std::invalid_argument("malformed exponent: " + text);
      exponent = exponent * 10 + (text[pos] - '0');
      if (exponent > 10000) throw std::invalid_argument("exponent out of range: " + text);
    }
    if (exp_neg) exponent = -exponent;
  }
  if (!any_digit || pos != text.size())
    throw std::invalid_argument("malformed rational literal: " + text);

  const long net = exponent - frac_digits;
  Rational value(mantissa);
  if (net > 0)
    value *= Rational(int_pow(BigInt(10), static_cast<unsigned>(net)));
  else if (net < 0)
    value /= Rational(int_pow(BigInt(10), static_cast<unsigned>(-net)));
  return negative ? -value : value;
}

std::string format_exact(const Rational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_decimal(const Rational& value, int significant_digits) {
  return format_decimal(value.convert_to<double>(), significant_digits);
}

std::string format_decimal(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return buf;
}

}  // namespace eca
