#include <doctest.h>

#include "eca/analysis.hpp"

using eca::Rational;
using eca::SystemConfig;

namespace {

eca::TransitionMatrix ideal_matrix(int b, int n) {
  return eca::build_transition_matrix(SystemConfig(b, n));
}

}  // namespace

TEST_CASE("fundamental matrix anchors") {
  const auto fm22 = eca::fundamental_matrix(ideal_matrix(2, 2));
  CHECK(fm22.at(0, 0) == 2);
  CHECK(fm22.at(0, 1) == 0);
  CHECK(fm22.at(1, 0) == 1);
  CHECK(fm22.at(1, 1) == 1);

  const auto fm11 = eca::fundamental_matrix(ideal_matrix(1, 1));
  CHECK(fm11.at(0, 0) == 1);
}

TEST_CASE("(I - Q) N = I holds exactly across the grid") {
  for (int b = 1; b <= 12; ++b) {
    for (int n = 1; n <= b; ++n) {
      const auto matrix = ideal_matrix(b, n);
      const auto fm = eca::fundamental_matrix(matrix);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Rational acc = 0;
          for (int k = 0; k < n; ++k) {
            const Rational i_minus_q =
                (i == k ? Rational(1) : Rational(0)) - matrix.at(i, k);
            acc += i_minus_q * fm.at(k, j);
          }
          CHECK(acc == (i == j ? 1 : 0));
        }
      }
    }
  }
}

TEST_CASE("fundamental matrix entries are nonnegative") {
  for (int b : {3, 6, 9}) {
    for (int n = 1; n <= b; ++n) {
      const auto fm = eca::fundamental_matrix(ideal_matrix(b, n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(fm.at(i, j) >= 0);
    }
  }
}

TEST_CASE("fundamental matrix rejects error-channel chains") {
  const auto noisy = eca::apply_channel_error(ideal_matrix(2, 2), Rational(1, 10));
  CHECK_THROWS_AS(eca::fundamental_matrix(noisy), std::invalid_argument);
}

TEST_CASE("expected steps to absorption") {
  CHECK(eca::expected_steps_to_absorption(eca::fundamental_matrix(ideal_matrix(2, 2))) == 2);
  CHECK(eca::expected_steps_to_absorption(eca::fundamental_matrix(ideal_matrix(1, 1))) == 1);

  // Two stations, sixteen slots: first round succeeds with probability 15/16.
  const Rational steps =
      eca::expected_steps_to_absorption(eca::fundamental_matrix(ideal_matrix(16, 2)));
  CHECK(steps == Rational(16, 15));
  CHECK(steps > 1);
  CHECK(steps < 2);

  const auto fm = eca::fundamental_matrix(ideal_matrix(4, 3));
  CHECK(eca::expected_steps_to_absorption(fm, 3) == 0);  // already absorbed
  CHECK_THROWS_AS(eca::expected_steps_to_absorption(fm, 4), std::invalid_argument);
  CHECK_THROWS_AS(eca::expected_steps_to_absorption(fm, -1), std::invalid_argument);
}

TEST_CASE("expected steps are nondecreasing in N at fixed B") {
  Rational previous = 0;
  for (int n = 2; n <= 8; ++n) {
    const Rational steps =
        eca::expected_steps_to_absorption(eca::fundamental_matrix(ideal_matrix(8, n)));
    CHECK(steps >= previous);
    previous = steps;
  }
}

TEST_CASE("stationary distribution") {
  SUBCASE("absorbing chain needs the explicit override") {
    const auto matrix = ideal_matrix(3, 2);
    CHECK_THROWS_AS(eca::stationary_distribution(matrix), std::invalid_argument);
    const auto pi = eca::stationary_distribution(matrix, true);
    CHECK(pi.probs[0] == 0);
    CHECK(pi.probs[1] == 0);
    CHECK(pi.probs[2] == 1);
  }

  SUBCASE("single station with epsilon 1/2 is a fair Bernoulli state") {
    const auto noisy = eca::apply_channel_error(ideal_matrix(2, 1), Rational(1, 2));
    const auto pi = eca::stationary_distribution(noisy);
    CHECK(pi.probs[0] == Rational(1, 2));
    CHECK(pi.probs[1] == Rational(1, 2));
    CHECK(eca::expected_successes_per_round(pi) == Rational(1, 2));
  }

  SUBCASE("epsilon = 1 is rejected") {
    const auto dead = eca::apply_channel_error(ideal_matrix(2, 2), Rational(1));
    CHECK_THROWS_AS(eca::stationary_distribution(dead), std::invalid_argument);
  }

  SUBCASE("pi P = pi exactly on a larger case") {
    const auto noisy = eca::apply_channel_error(ideal_matrix(8, 4), Rational(1, 10));
    const auto pi = eca::stationary_distribution(noisy);
    Rational mass = 0;
    for (const Rational& p : pi.probs) {
      CHECK(p >= 0);
      mass += p;
    }
    CHECK(mass == 1);
    for (int j = 0; j <= 4; ++j) {
      Rational acc = 0;
      for (int i = 0; i <= 4; ++i) acc += pi.probs[i] * noisy.at(i, j);
      CHECK(acc == pi.probs[j]);
    }
  }
}

TEST_CASE("expected successes per round") {
  eca::StateDistribution unit;
  unit.probs = {Rational(0), Rational(0), Rational(0), Rational(1)};
  CHECK(eca::expected_successes_per_round(unit) == 3);

  eca::StateDistribution bad;
  bad.probs = {Rational(1, 2), Rational(1, 4)};
  CHECK_THROWS_AS(eca::expected_successes_per_round(bad), std::invalid_argument);
}

TEST_CASE("expected successes approach N as epsilon vanishes") {
  const Rational tiny(1, 1000000);
  for (int n : {2, 4}) {
    const auto noisy = eca::apply_channel_error(ideal_matrix(4, n), tiny);
    const Rational value = eca::expected_successes_per_round(eca::stationary_distribution(noisy));
    CHECK(Rational(n) - value >= 0);
    CHECK(Rational(n) - value <= Rational(n) * Rational(1, 1000));
  }
}
