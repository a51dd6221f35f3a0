#pragma once

// Convergence and steady-state metrics derived from a TransitionMatrix:
// fundamental matrix of the absorbing chain, expected rounds to collision-free
// operation, and the stationary distribution of the error-channel chain.

#include <vector>

#include "eca/config.hpp"
#include "eca/rational.hpp"
#include "eca/transition.hpp"

namespace eca {

/// N = (I - Q)^-1 where Q is the transient block of the absorbing chain.
/// Entry (i, j) is the expected number of visits to transient state S_j when
/// starting from S_i; row sums give expected steps to absorption.
class FundamentalMatrix {
 public:
  FundamentalMatrix(SystemConfig config, std::vector<Rational> row_major_entries);

  int dimension() const { return config_.stations; }  // N transient states
  const SystemConfig& config() const { return config_; }
  const Rational& at(int i, int j) const;

 private:
  SystemConfig config_;
  std::vector<Rational> entries_;
};

/// Probability vector over the N+1 chain states.
struct StateDistribution {
  std::vector<Rational> probs;

  int states() const { return static_cast<int>(probs.size()); }
};

/// Exact rational inversion of (I - Q). Rejects matrices built with
/// epsilon > 0 (the chain is no longer absorbing).
FundamentalMatrix fundamental_matrix(const TransitionMatrix& matrix);

/// Sum of row `start` of the fundamental matrix: the expected number of
/// rounds to reach collision-free operation from S_start. start == N returns
/// 0 (already absorbed).
Rational expected_steps_to_absorption(const FundamentalMatrix& fm, int start = 0);

/// Unique pi with pi P = pi, sum(pi) = 1, solved exactly. Requires a matrix
/// built with 0 < epsilon < 1; an epsilon = 0 matrix is rejected unless
/// allow_absorbing is set, in which case the unit mass on S_N is returned.
StateDistribution stationary_distribution(const TransitionMatrix& matrix,
                                          bool allow_absorbing = false);

/// Sum of delta * pi_delta: the long-run average number of successful
/// transmissions per round.
Rational expected_successes_per_round(const StateDistribution& pi);

}  // namespace eca
