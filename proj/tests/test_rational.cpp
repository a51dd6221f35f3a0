#include <doctest.h>

#include "eca/rational.hpp"

using eca::BigInt;
using eca::Rational;

TEST_CASE("factorial and binomial basics") {
  CHECK(eca::factorial(0) == 1);
  CHECK(eca::factorial(5) == 120);
  CHECK(eca::factorial(16) == BigInt("20922789888000"));
  CHECK(eca::factorial(70) == eca::factorial(69) * 70);  // beyond the table

  CHECK(eca::binomial(0, 0) == 1);
  CHECK(eca::binomial(5, 2) == 10);
  CHECK(eca::binomial(16, 8) == 12870);
  CHECK(eca::binomial(3, 5) == 0);
}

TEST_CASE("binomial matches the factorial form") {
  for (unsigned n = 0; n <= 20; ++n)
    for (unsigned k = 0; k <= n; ++k)
      CHECK(eca::binomial(n, k) ==
            eca::factorial(n) / (eca::factorial(k) * eca::factorial(n - k)));
}

TEST_CASE("integer and rational powers, 0^0 convention") {
  CHECK(eca::int_pow(BigInt(0), 0) == 1);
  CHECK(eca::int_pow(BigInt(2), 10) == 1024);
  CHECK(eca::int_pow(BigInt(16), 16) == BigInt("18446744073709551616"));
  CHECK(eca::pow_rational(Rational(0), 0) == 1);
  CHECK(eca::pow_rational(Rational(1, 2), 3) == Rational(1, 8));
}

TEST_CASE("parse_rational accepts fractions and decimals") {
  CHECK(eca::parse_rational("1/10") == Rational(1, 10));
  CHECK(eca::parse_rational("0.1") == Rational(1, 10));
  CHECK(eca::parse_rational("0") == 0);
  CHECK(eca::parse_rational("1") == 1);
  CHECK(eca::parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(eca::parse_rational("1e2") == 100);
  CHECK(eca::parse_rational("18/100") == Rational(9, 50));
  CHECK(eca::parse_rational("-0.5") == Rational(-1, 2));
}

TEST_CASE("parse_rational rejects junk") {
  CHECK_THROWS_AS(eca::parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(eca::parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(eca::parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(eca::parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(eca::parse_rational("1e"), std::invalid_argument);
}

TEST_CASE("formatting") {
  CHECK(eca::format_exact(Rational(1, 2)) == "1/2");
  CHECK(eca::format_exact(Rational(4)) == "4");
  CHECK(eca::format_exact(Rational(0)) == "0");
  CHECK(eca::format_decimal(Rational(1, 2)) == "0.5");
  CHECK(eca::format_decimal(Rational(7, 3)) == "2.33333333333");
}
