#include "eca/verify.hpp"

#include <algorithm>
#include <sstream>

#include "eca/oracle.hpp"

namespace eca {

namespace {

std::string describe(const SystemConfig& cfg) {
  std::ostringstream os;
  os << "B=" << cfg.slots_per_round << " N=" << cfg.stations;
  if (cfg.error_prob != 0) os << " eps=" << format_exact(cfg.error_prob);
  return os.str();
}

// Next j-subset of {0..n-1} in lexicographic order; false when exhausted.
bool next_subset(std::vector<int>& subset, int n) {
  const int j = static_cast<int>(subset.size());
  int i = j - 1;
  while (i >= 0 && subset[i] == n - j + i) --i;
  if (i < 0) return false;
  ++subset[i];
  for (int t = i + 1; t < j; ++t) subset[t] = subset[t - 1] + 1;
  return true;
}

}  // namespace

void VerifyReport::merge(const VerifyReport& other) {
  checks += other.checks;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

int max_verifiable_slots() {
  // B^B <= enumeration budget; 7^7 fits, 8^8 does not.
  int b = 1;
  while (int_pow(BigInt(b + 1), static_cast<unsigned>(b + 1)) <= kEnumerationBudget) ++b;
  return b;
}

Rational s_term_definitional(const SystemConfig& config, int d, int j) {
  const int n = config.stations;
  if (j == 0) return 1;

  // Stations 0..d-1 are the deterministic ones; walk every j-subset and add
  // its success probability.
  Rational sum = 0;
  std::vector<int> subset(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i) subset[i] = i;
  do {
    int k = 0;
    for (int member : subset)
      if (member < d) ++k;
    sum += intersection_success_prob(config, d, j, k);
  } while (next_subset(subset, n));
  return sum;
}

VerifyReport compare_matrix_to_oracle(const TransitionMatrix& matrix) {
  VerifyReport report;
  const SystemConfig& cfg = matrix.config();
  const int n = cfg.stations;
  for (int d = 0; d < n; ++d) {
    const ExactDistribution oracle =
        cfg.error_prob == 0
            ? enumerate_transition(cfg.slots_per_round, n, d)
            : enumerate_error_transition(cfg.slots_per_round, n, d, cfg.error_prob);
    for (int delta = 0; delta <= n; ++delta) {
      ++report.checks;
      if (matrix.at(d, delta) != oracle.probs[delta]) {
        std::ostringstream os;
        os << "oracle mismatch at " << describe(cfg) << " d=" << d << " delta=" << delta
           << ": formula " << format_exact(matrix.at(d, delta)) << " vs oracle "
           << format_exact(oracle.probs[delta]);
        report.failures.push_back(os.str());
      }
    }
  }
  return report;
}

VerifyReport verify_oracle_equivalence(int max_slots) {
  VerifyReport report;
  for (int b = 1; b <= max_slots; ++b) {
    for (int n = 1; n <= b; ++n) {
      const SystemConfig cfg(b, n);
      report.merge(compare_matrix_to_oracle(build_transition_matrix(cfg)));
    }
  }
  return report;
}

VerifyReport verify_subset_sums(int max_slots) {
  VerifyReport report;
  for (int b = 1; b <= max_slots; ++b) {
    for (int n = 1; n <= b; ++n) {
      const SystemConfig cfg(b, n);
      for (int d = 0; d < n; ++d) {
        for (int j = 0; j <= n; ++j) {
          ++report.checks;
          const Rational closed = s_term(cfg, d, j);
          const Rational definitional = s_term_definitional(cfg, d, j);
          if (closed != definitional) {
            std::ostringstream os;
            os << "S(j) mismatch at " << describe(cfg) << " d=" << d << " j=" << j << ": closed "
               << format_exact(closed) << " vs definitional " << format_exact(definitional);
            report.failures.push_back(os.str());
          }
        }
      }
    }
  }
  return report;
}

VerifyReport verify_matrix_invariants(int max_slots, const std::vector<Rational>& epsilons) {
  VerifyReport report;
  auto check_matrix = [&report](const TransitionMatrix& matrix) {
    const int n = matrix.config().stations;
    for (int d = 0; d <= n; ++d) {
      ++report.checks;
      if (matrix.row_sum(d) != 1) {
        report.failures.push_back("row sum != 1 at " + describe(matrix.config()) +
                                  " d=" + std::to_string(d));
      }
      for (int delta = 0; delta <= n; ++delta) {
        ++report.checks;
        if (matrix.at(d, delta) < 0) {
          report.failures.push_back("negative entry at " + describe(matrix.config()) + " d=" +
                                    std::to_string(d) + " delta=" + std::to_string(delta));
        }
      }
    }
  };

  for (int b = 1; b <= max_slots; ++b) {
    for (int n = 1; n <= b; ++n) {
      const TransitionMatrix ideal = build_transition_matrix(SystemConfig(b, n));
      check_matrix(ideal);

      // Absorbing unit row.
      for (int delta = 0; delta <= n; ++delta) {
        ++report.checks;
        const Rational expected = delta == n ? 1 : 0;
        if (ideal.at(n, delta) != expected)
          report.failures.push_back("absorbing row wrong at " + describe(ideal.config()));
      }
      // A lone colliding station is impossible: p_{0,N-1} = 0 for N >= 2.
      if (n >= 2) {
        ++report.checks;
        if (ideal.at(0, n - 1) != 0)
          report.failures.push_back("p_{0,N-1} != 0 at " + describe(ideal.config()));
      }

      for (const Rational& eps : epsilons) {
        if (eps == 0) continue;
        check_matrix(apply_channel_error(ideal, eps));
      }
    }
  }
  return report;
}

VerifyReport verify_error_model(int max_slots, const std::vector<Rational>& epsilons) {
  VerifyReport report;
  for (int b = 1; b <= max_slots; ++b) {
    for (int n = 1; n <= b; ++n) {
      const TransitionMatrix ideal = build_transition_matrix(SystemConfig(b, n));

      // epsilon = 0 must reproduce the input entry-for-entry.
      const TransitionMatrix zero = apply_channel_error(ideal, Rational(0));
      for (int d = 0; d <= n; ++d)
        for (int delta = 0; delta <= n; ++delta) {
          ++report.checks;
          if (zero.at(d, delta) != ideal.at(d, delta))
            report.failures.push_back("epsilon=0 not identity at " + describe(ideal.config()));
        }

      // epsilon = 1 concentrates every row on delta = 0.
      const TransitionMatrix certain = apply_channel_error(ideal, Rational(1));
      for (int d = 0; d <= n; ++d)
        for (int delta = 0; delta <= n; ++delta) {
          ++report.checks;
          const Rational expected = delta == 0 ? 1 : 0;
          if (certain.at(d, delta) != expected)
            report.failures.push_back("epsilon=1 row not concentrated at " +
                                      describe(ideal.config()));
        }

      for (const Rational& eps : epsilons) {
        if (eps == 0 || eps == 1) continue;
        report.merge(compare_matrix_to_oracle(apply_channel_error(ideal, eps)));
      }
    }
  }
  return report;
}

VerifyReport verify_placement_invariance(int max_slots) {
  VerifyReport report;
  for (int b = 2; b <= max_slots; ++b) {
    for (int n = 2; n <= b; ++n) {
      for (int d = 1; d < n; ++d) {
        const ExactDistribution canonical = enumerate_transition(b, n, d);

        // Highest slots instead of lowest, plus a spread placement.
        std::vector<std::vector<int>> placements;
        std::vector<int> high(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) high[i] = b - 1 - i;
        placements.push_back(high);
        if (b >= 2 * d) {
          std::vector<int> spread(static_cast<std::size_t>(d));
          for (int i = 0; i < d; ++i) spread[i] = 2 * i;
          placements.push_back(spread);
        }

        for (const auto& placement : placements) {
          const ExactDistribution placed = enumerate_transition_placed(b, n, placement);
          for (int delta = 0; delta <= n; ++delta) {
            ++report.checks;
            if (placed.probs[delta] != canonical.probs[delta]) {
              report.failures.push_back("placement dependence at B=" + std::to_string(b) +
                                        " N=" + std::to_string(n) + " d=" + std::to_string(d));
            }
          }
        }
      }
    }
  }
  return report;
}

VerifyReport run_verification(int max_slots, const std::vector<Rational>& epsilons) {
  if (max_slots < 1) throw std::invalid_argument("max_slots must be >= 1");
  if (max_slots > max_verifiable_slots())
    throw std::invalid_argument("max_slots " + std::to_string(max_slots) +
                                " exceeds the enumeration budget (max " +
                                std::to_string(max_verifiable_slots()) + ")");
  for (const Rational& eps : epsilons)
    if (eps < 0 || eps > 1) throw std::invalid_argument("epsilon must lie in [0, 1]");

  VerifyReport report;
  report.merge(verify_oracle_equivalence(max_slots));
  report.merge(verify_subset_sums(max_slots));
  report.merge(verify_matrix_invariants(max_slots, epsilons));
  report.merge(verify_error_model(std::min(max_slots, 5), epsilons));
  report.merge(verify_placement_invariance(std::min(max_slots, 5)));
  return report;
}

}  // namespace eca
