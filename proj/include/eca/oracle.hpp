#pragma once

// Brute-force ground truth for small instances: enumerate every assignment of
// the random stations to slots and count exact success totals. Completely
// independent of the inclusion-exclusion formulas it validates.

#include <cstdint>
#include <vector>

#include "eca/config.hpp"
#include "eca/rational.hpp"

namespace eca {

/// Exhaustive enumeration may touch at most this many outcomes (B^(N-d)).
inline constexpr std::uint64_t kEnumerationBudget = 10'000'000;

/// Exact next-state distribution obtained by enumeration.
struct ExactDistribution {
  std::vector<Rational> probs;  // indexed by delta = 0..N
  BigInt total_outcomes;        // B^(N-d)

  int states() const { return static_cast<int>(probs.size()); }
};

/// Distribution of the number of successes in one round with d deterministic
/// stations (placed in slots 0..d-1) and N-d random stations enumerated over
/// all B^(N-d) assignments. Requires N <= B, d < N, and the outcome budget.
ExactDistribution enumerate_transition(int slots, int stations, int d);

/// Same, with the deterministic stations placed in the given distinct slots.
/// The resulting distribution is placement-invariant; tests exercise this.
ExactDistribution enumerate_transition_placed(int slots, int stations,
                                              const std::vector<int>& deterministic_slots);

/// Enumeration combined with exact binomial thinning: each outcome with i
/// collision-free stations spreads its mass over delta <= i with weight
/// C(i,delta) eps^(i-delta) (1-eps)^delta.
ExactDistribution enumerate_error_transition(int slots, int stations, int d,
                                             const Rational& epsilon);

}  // namespace eca
