#include <doctest.h>

#include "eca/oracle.hpp"
#include "eca/transition.hpp"

using eca::Rational;

TEST_CASE("hand-enumerated distributions") {
  // Two random stations, two slots: (1,1),(2,2) collide; (1,2),(2,1) succeed.
  const auto d0 = eca::enumerate_transition(2, 2, 0);
  CHECK(d0.probs[0] == Rational(1, 2));
  CHECK(d0.probs[1] == 0);
  CHECK(d0.probs[2] == Rational(1, 2));
  CHECK(d0.total_outcomes == 4);

  // One deterministic, one random: hit or miss.
  const auto d1 = eca::enumerate_transition(2, 2, 1);
  CHECK(d1.probs[0] == Rational(1, 2));
  CHECK(d1.probs[1] == 0);
  CHECK(d1.probs[2] == Rational(1, 2));
  CHECK(d1.total_outcomes == 2);

  // Three random stations in three slots: 3! permutations of 27 outcomes.
  const auto d3 = eca::enumerate_transition(3, 3, 0);
  CHECK(d3.probs[3] == Rational(2, 9));
}

TEST_CASE("distributions sum to 1 with denominators dividing B^(N-d)") {
  for (int b = 1; b <= 5; ++b) {
    for (int n = 1; n <= b; ++n) {
      for (int d = 0; d < n; ++d) {
        const auto dist = eca::enumerate_transition(b, n, d);
        Rational sum = 0;
        for (const Rational& p : dist.probs) {
          sum += p;
          CHECK(dist.total_outcomes % denominator(p) == 0);
        }
        CHECK(sum == 1);
      }
    }
  }
}

TEST_CASE("oracle agrees with the closed form") {
  for (int b = 1; b <= 5; ++b) {
    for (int n = 1; n <= b; ++n) {
      const eca::SystemConfig cfg(b, n);
      for (int d = 0; d < n; ++d) {
        const auto dist = eca::enumerate_transition(b, n, d);
        for (int delta = 0; delta <= n; ++delta)
          CHECK(dist.probs[delta] == eca::transition_prob(cfg, d, delta));
      }
    }
  }
}

TEST_CASE("placement invariance") {
  const auto canonical = eca::enumerate_transition(5, 4, 2);
  const auto high = eca::enumerate_transition_placed(5, 4, {4, 3});
  const auto spread = eca::enumerate_transition_placed(5, 4, {0, 3});
  for (int delta = 0; delta <= 4; ++delta) {
    CHECK(high.probs[delta] == canonical.probs[delta]);
    CHECK(spread.probs[delta] == canonical.probs[delta]);
  }
}

TEST_CASE("error-channel enumeration") {
  SUBCASE("epsilon = 0 reduces to the plain enumeration") {
    const auto plain = eca::enumerate_transition(3, 2, 0);
    const auto zero = eca::enumerate_error_transition(3, 2, 0, Rational(0));
    for (int delta = 0; delta <= 2; ++delta) CHECK(zero.probs[delta] == plain.probs[delta]);
  }

  SUBCASE("binomial thinning splits the success mass") {
    const auto dist = eca::enumerate_error_transition(2, 2, 0, Rational(1, 10));
    CHECK(dist.probs[2] == Rational(81, 200));  // (1/2) * (9/10)^2
    Rational sum = 0;
    for (const Rational& p : dist.probs) sum += p;
    CHECK(sum == 1);
  }

  SUBCASE("epsilon = 1 concentrates on zero successes") {
    const auto dist = eca::enumerate_error_transition(3, 3, 1, Rational(1));
    CHECK(dist.probs[0] == 1);
    CHECK(dist.probs[1] == 0);
    CHECK(dist.probs[2] == 0);
    CHECK(dist.probs[3] == 0);
  }

  SUBCASE("agrees with apply_channel_error") {
    const Rational eps(1, 2);
    for (int b = 2; b <= 4; ++b) {
      for (int n = 2; n <= b; ++n) {
        const auto noisy = eca::apply_channel_error(
            eca::build_transition_matrix(eca::SystemConfig(b, n)), eps);
        for (int d = 0; d < n; ++d) {
          const auto dist = eca::enumerate_error_transition(b, n, d, eps);
          for (int delta = 0; delta <= n; ++delta)
            CHECK(dist.probs[delta] == noisy.at(d, delta));
        }
      }
    }
  }
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(eca::enumerate_transition(2, 3, 0), eca::InfeasibleError);
  CHECK_THROWS_AS(eca::enumerate_transition(2, 2, 2), std::invalid_argument);  // d >= N
  CHECK_THROWS_AS(eca::enumerate_transition(30, 6, 0), std::invalid_argument);  // budget
  CHECK_THROWS_AS(eca::enumerate_transition_placed(3, 3, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(eca::enumerate_transition_placed(3, 3, {5}), std::invalid_argument);
}
