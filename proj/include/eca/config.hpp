#pragma once

#include <stdexcept>

#include "eca/rational.hpp"

namespace eca {

/// Raised by analytic operations when N > B: no collision-free assignment
/// exists, and the closed-form expressions contain (B-N)! which is undefined.
struct InfeasibleError : std::domain_error {
  InfeasibleError() : std::domain_error("infeasible: N > B") {}
};

/// The triple (B, N, epsilon): slots per round, contending stations, and
/// per-transmission channel error probability.
struct SystemConfig {
  int slots_per_round;  // B
  int stations;         // N
  Rational error_prob;  // epsilon

  SystemConfig(int slots, int station_count, Rational epsilon = Rational(0))
      : slots_per_round(slots), stations(station_count), error_prob(std::move(epsilon)) {
    if (slots_per_round < 1) throw std::invalid_argument("slots_per_round must be >= 1");
    if (stations < 1) throw std::invalid_argument("stations must be >= 1");
    if (error_prob < 0 || error_prob > 1)
      throw std::invalid_argument("error_prob must lie in [0, 1]");
  }

  /// True when a collision-free schedule exists (N <= B). The analytic
  /// modules require this; the simulator does not.
  bool analytically_feasible() const { return stations <= slots_per_round; }

  void require_feasible() const {
    if (!analytically_feasible()) throw InfeasibleError();
  }
};

}  // namespace eca
