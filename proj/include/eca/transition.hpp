#pragma once

// Closed-form transition probabilities of the protocol's Markov chain.
//
// The chain has states S_0 ... S_N, where S_d means exactly d stations
// transmitted successfully in the previous round and will reuse their slot
// deterministically. The probability of moving from S_d to S_delta is an
// alternating inclusion-exclusion sum over subset success terms S(j). All
// arithmetic is exact rational: the sums alternate with large terms and
// floating point would cancel catastrophically at B = N = 16.

#include <vector>

#include "eca/config.hpp"
#include "eca/rational.hpp"

namespace eca {

/// Row-stochastic (N+1) x (N+1) matrix over chain states, exact rational
/// entries, rows/columns indexed 0..N by the number of deterministic stations.
class TransitionMatrix {
 public:
  TransitionMatrix(SystemConfig config, std::vector<Rational> row_major_entries);

  int dimension() const { return config_.stations + 1; }
  const SystemConfig& config() const { return config_; }

  const Rational& at(int d, int delta) const;
  Rational row_sum(int d) const;

 private:
  SystemConfig config_;
  std::vector<Rational> entries_;
};

/// Probability that a fixed set of j tagged stations (k of them deterministic)
/// all succeed, given d deterministic stations total. Requires N <= B and
/// max(0, j+d-N) <= k <= min(d, j).
Rational intersection_success_prob(const SystemConfig& config, int d, int j, int k);

/// Sum over all j-subsets of stations of the probability that the whole
/// subset succeeds. Not itself a probability; S(0) == 1 by convention.
Rational s_term(const SystemConfig& config, int d, int j);

/// Transition probability p_{d,delta} for the ideal channel. Row N is the
/// absorbing unit row.
Rational transition_prob(const SystemConfig& config, int d, int delta);

/// Full (N+1) x (N+1) matrix for an ideal channel (config.error_prob must be 0).
TransitionMatrix build_transition_matrix(const SystemConfig& config);

/// Binomial thinning of a matrix by per-transmission error probability
/// epsilon: a round that would have produced i successes keeps delta of them
/// with probability C(i,delta) eps^(i-delta) (1-eps)^delta.
TransitionMatrix apply_channel_error(const TransitionMatrix& ideal, const Rational& epsilon);

/// Convenience: ideal matrix when config.error_prob == 0, otherwise the
/// error-transformed matrix for that epsilon.
TransitionMatrix transition_matrix_for(const SystemConfig& config);

}  // namespace eca
