#include <doctest.h>

#include "eca/transition.hpp"

using eca::Rational;
using eca::SystemConfig;

TEST_CASE("intersection success probability anchors") {
  // Two random stations in two slots: both succeed in 2 of 4 assignments.
  CHECK(eca::intersection_success_prob(SystemConfig(2, 2), 0, 2, 0) == Rational(1, 2));
  // Tagged deterministic station survives iff the random one avoids its slot.
  CHECK(eca::intersection_success_prob(SystemConfig(3, 2), 1, 1, 1) == Rational(2, 3));
  // A lone station always succeeds.
  CHECK(eca::intersection_success_prob(SystemConfig(5, 1), 0, 1, 0) == 1);
}

TEST_CASE("intersection success probability rejects out-of-bound arguments") {
  CHECK_THROWS_AS(eca::intersection_success_prob(SystemConfig(2, 3), 0, 1, 0),
                  eca::InfeasibleError);
  // k may not exceed min(d, j).
  CHECK_THROWS_AS(eca::intersection_success_prob(SystemConfig(3, 2), 0, 1, 1),
                  std::invalid_argument);
  // k may not fall below j + d - N.
  CHECK_THROWS_AS(eca::intersection_success_prob(SystemConfig(3, 3), 1, 3, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(eca::intersection_success_prob(SystemConfig(3, 2), 0, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("subset success sums S(j)") {
  const SystemConfig cfg(2, 2);
  CHECK(eca::s_term(cfg, 0, 0) == 1);
  CHECK(eca::s_term(cfg, 0, 1) == 1);
  CHECK(eca::s_term(cfg, 0, 2) == Rational(1, 2));

  CHECK_THROWS_AS(eca::s_term(SystemConfig(2, 3), 0, 1), eca::InfeasibleError);
  CHECK_THROWS_AS(eca::s_term(cfg, 2, 1), std::invalid_argument);  // d >= N
}

TEST_CASE("transition probability anchors") {
  const SystemConfig cfg(2, 2);
  CHECK(eca::transition_prob(cfg, 2, 2) == 1);  // absorbing state
  CHECK(eca::transition_prob(cfg, 2, 0) == 0);
  CHECK(eca::transition_prob(cfg, 0, 1) == 0);
  CHECK(eca::transition_prob(cfg, 0, 2) == Rational(1, 2));
  CHECK(eca::transition_prob(SystemConfig(3, 2), 1, 2) == Rational(2, 3));
  CHECK_THROWS_AS(eca::transition_prob(SystemConfig(2, 3), 0, 0), eca::InfeasibleError);
}

TEST_CASE("transition matrix for B=2, N=2") {
  const eca::TransitionMatrix m = eca::build_transition_matrix(SystemConfig(2, 2));
  const Rational half(1, 2);
  CHECK(m.at(0, 0) == half);
  CHECK(m.at(0, 1) == 0);
  CHECK(m.at(0, 2) == half);
  // A deterministic/random collision fails both stations.
  CHECK(m.at(1, 0) == half);
  CHECK(m.at(1, 1) == 0);
  CHECK(m.at(1, 2) == half);
  CHECK(m.at(2, 0) == 0);
  CHECK(m.at(2, 1) == 0);
  CHECK(m.at(2, 2) == 1);
}

TEST_CASE("transition matrix for B=1, N=1") {
  const eca::TransitionMatrix m = eca::build_transition_matrix(SystemConfig(1, 1));
  CHECK(m.at(0, 0) == 0);
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(1, 0) == 0);
  CHECK(m.at(1, 1) == 1);
}

TEST_CASE("rows are stochastic and nonnegative across the small grid") {
  for (int b = 1; b <= 8; ++b) {
    for (int n = 1; n <= b; ++n) {
      const eca::TransitionMatrix m = eca::build_transition_matrix(SystemConfig(b, n));
      for (int d = 0; d <= n; ++d) {
        CHECK(m.row_sum(d) == 1);
        for (int delta = 0; delta <= n; ++delta) CHECK(m.at(d, delta) >= 0);
      }
    }
  }
}

TEST_CASE("channel error transform") {
  const eca::TransitionMatrix ideal = eca::build_transition_matrix(SystemConfig(2, 2));

  SUBCASE("epsilon = 0 is the identity transform") {
    const eca::TransitionMatrix same = eca::apply_channel_error(ideal, Rational(0));
    for (int d = 0; d <= 2; ++d)
      for (int delta = 0; delta <= 2; ++delta) CHECK(same.at(d, delta) == ideal.at(d, delta));
  }

  SUBCASE("binomial thinning of the certain-success row") {
    const eca::TransitionMatrix noisy = eca::apply_channel_error(ideal, Rational(1, 10));
    CHECK(noisy.at(2, 0) == Rational(1, 100));
    CHECK(noisy.at(2, 1) == Rational(18, 100));
    CHECK(noisy.at(2, 2) == Rational(81, 100));
    for (int d = 0; d <= 2; ++d) CHECK(noisy.row_sum(d) == 1);
  }

  SUBCASE("epsilon = 1 concentrates every row on zero successes") {
    const eca::TransitionMatrix dead = eca::apply_channel_error(ideal, Rational(1));
    for (int d = 0; d <= 2; ++d) {
      CHECK(dead.at(d, 0) == 1);
      CHECK(dead.at(d, 1) == 0);
      CHECK(dead.at(d, 2) == 0);
    }
  }

  SUBCASE("epsilon outside [0,1] is rejected") {
    CHECK_THROWS_AS(eca::apply_channel_error(ideal, Rational(11, 10)), std::invalid_argument);
    CHECK_THROWS_AS(eca::apply_channel_error(ideal, Rational(-1, 10)), std::invalid_argument);
  }
}

TEST_CASE("error rows stay stochastic on a larger grid") {
  const Rational eps(1, 10);
  for (int b = 1; b <= 8; ++b) {
    for (int n = 1; n <= b; ++n) {
      const auto noisy =
          eca::apply_channel_error(eca::build_transition_matrix(SystemConfig(b, n)), eps);
      for (int d = 0; d <= n; ++d) {
        CHECK(noisy.row_sum(d) == 1);
        for (int delta = 0; delta <= n; ++delta) CHECK(noisy.at(d, delta) >= 0);
      }
    }
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(SystemConfig(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(SystemConfig(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(SystemConfig(2, 2, Rational(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(eca::build_transition_matrix(SystemConfig(2, 2, Rational(1, 10))),
                  std::invalid_argument);
  CHECK(SystemConfig(2, 3).analytically_feasible() == false);
}
