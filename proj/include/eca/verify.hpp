#pragma once

// Cross-validation suites behind the `verify` CLI command: the closed-form
// transition rows against the enumeration oracle, the closed-form S(j)
// against its definitional subset sum, and the structural matrix invariants.

#include <cstdint>
#include <string>
#include <vector>

#include "eca/config.hpp"
#include "eca/rational.hpp"
#include "eca/transition.hpp"

namespace eca {

struct VerifyReport {
  std::uint64_t checks = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void merge(const VerifyReport& other);
};

/// Largest max_slots for which the full oracle sweep fits the enumeration
/// budget (B^B outcomes at d = 0).
int max_verifiable_slots();

/// S(j) computed from its definition: iterate every j-subset of the N
/// stations and sum the subset success probabilities. Independent of the
/// closed form's C(d,k) C(N-d,j-k) grouping.
Rational s_term_definitional(const SystemConfig& config, int d, int j);

/// Analytic rows vs. brute-force enumeration, rational-exact, for all
/// B <= max_slots, N <= B, d < N.
VerifyReport verify_oracle_equivalence(int max_slots);

/// Closed-form S(j) vs. the definitional subset sum for all B <= max_slots.
VerifyReport verify_subset_sums(int max_slots);

/// Row sums exactly 1, entries nonnegative, absorbing unit row, and
/// p_{0,N-1} = 0, for ideal and error matrices with B <= max_slots.
VerifyReport verify_matrix_invariants(int max_slots, const std::vector<Rational>& epsilons);

/// apply_channel_error vs. the error-enumeration oracle for rational epsilons.
VerifyReport verify_error_model(int max_slots, const std::vector<Rational>& epsilons);

/// Deterministic stations may sit in any d distinct slots without changing
/// the distribution.
VerifyReport verify_placement_invariance(int max_slots);

/// Compares a matrix row-for-row against the enumeration oracle. Used by the
/// suites above and, with a deliberately corrupted matrix, by the negative
/// control test.
VerifyReport compare_matrix_to_oracle(const TransitionMatrix& matrix);

/// Everything above in one report.
VerifyReport run_verification(int max_slots, const std::vector<Rational>& epsilons);

}  // namespace eca
