#include "eca/transition.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace eca {

TransitionMatrix::TransitionMatrix(SystemConfig config, std::vector<Rational> row_major_entries)
    : config_(std::move(config)), entries_(std::move(row_major_entries)) {
  const std::size_t dim = static_cast<std::size_t>(config_.stations) + 1;
  if (entries_.size() != dim * dim)
    throw std::invalid_argument("transition matrix entry count does not match (N+1)^2");
}

const Rational& TransitionMatrix::at(int d, int delta) const {
  const int dim = dimension();
  if (d < 0 || d >= dim || delta < 0 || delta >= dim)
    throw std::out_of_range("transition matrix index out of range");
  return entries_[static_cast<std::size_t>(d) * dim + delta];
}

Rational TransitionMatrix::row_sum(int d) const {
  Rational sum = 0;
  for (int delta = 0; delta < dimension(); ++delta) sum += at(d, delta);
  return sum;
}

namespace {

void check_state_args(const SystemConfig& config, int d) {
  config.require_feasible();
  if (d < 0 || d >= config.stations)
    throw std::invalid_argument("state index d must satisfy 0 <= d < N");
}

}  // namespace

Rational intersection_success_prob(const SystemConfig& config, int d, int j, int k) {
  check_state_args(config, d);
  const int n = config.stations;
  const int b = config.slots_per_round;
  if (j < 1 || j > n) throw std::invalid_argument("subset size j must satisfy 1 <= j <= N");
  if (k < std::max(0, j + d - n) || k > std::min(d, j))
    throw std::invalid_argument("deterministic count k outside max(0,j+d-N)..min(d,j)");

  const unsigned random_tagged = static_cast<unsigned>(j - k);
  const BigInt denom = factorial(static_cast<unsigned>(b - d - (j - k))) *
                       int_pow(BigInt(b), static_cast<unsigned>(n - d));
  if (j == n) return Rational(factorial(static_cast<unsigned>(b - d)), denom);

  // j < N: the j-k tagged random stations fill distinct free slots, and the
  // untagged random stations avoid all j tagged slots. (B-j)^0 == 1 covers
  // the case with no untagged random stations.
  const unsigned untagged_random = static_cast<unsigned>(n - d) - random_tagged;
  const BigInt numer =
      factorial(static_cast<unsigned>(b - d)) * int_pow(BigInt(b - j), untagged_random);
  return Rational(numer, denom);
}

Rational s_term(const SystemConfig& config, int d, int j) {
  check_state_args(config, d);
  const int n = config.stations;
  if (j < 0 || j > n) throw std::invalid_argument("subset size j must satisfy 0 <= j <= N");
  if (j == 0) return 1;  // empty intersection

  Rational sum = 0;
  const int k_lo = std::max(0, j + d - n);
  const int k_hi = std::min(d, j);
  for (int k = k_lo; k <= k_hi; ++k) {
    const BigInt ways = binomial(static_cast<unsigned>(d), static_cast<unsigned>(k)) *
                        binomial(static_cast<unsigned>(n - d), static_cast<unsigned>(j - k));
    sum += Rational(ways) * intersection_success_prob(config, d, j, k);
  }
  return sum;
}

Rational transition_prob(const SystemConfig& config, int d, int delta) {
  config.require_feasible();
  const int n = config.stations;
  if (d < 0 || d > n || delta < 0 || delta > n)
    throw std::invalid_argument("state indices must lie in 0..N");
  if (d == n) return delta == n ? Rational(1) : Rational(0);

  Rational p = 0;
  for (int j = delta; j <= n; ++j) {
    const Rational term =
        Rational(binomial(static_cast<unsigned>(j), static_cast<unsigned>(delta))) *
        s_term(config, d, j);
    if ((j + delta) % 2 == 0)
      p += term;
    else
      p -= term;
  }
  return p;
}

TransitionMatrix build_transition_matrix(const SystemConfig& config) {
  config.require_feasible();
  if (config.error_prob != 0)
    throw std::invalid_argument("build_transition_matrix requires error_prob == 0");
  const int n = config.stations;
  const int dim = n + 1;
  std::vector<Rational> entries(static_cast<std::size_t>(dim) * dim);

  for (int d = 0; d < n; ++d) {
    // One S(j) sweep serves the whole row.
    std::vector<Rational> s(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) s[j] = s_term(config, d, j);
    for (int delta = 0; delta <= n; ++delta) {
      Rational p = 0;
      for (int j = delta; j <= n; ++j) {
        const Rational term =
            Rational(binomial(static_cast<unsigned>(j), static_cast<unsigned>(delta))) * s[j];
        if ((j + delta) % 2 == 0)
          p += term;
        else
          p -= term;
      }
      entries[static_cast<std::size_t>(d) * dim + delta] = std::move(p);
    }
  }
  entries[static_cast<std::size_t>(n) * dim + n] = 1;  // absorbing row

  return TransitionMatrix(config, std::move(entries));
}

TransitionMatrix apply_channel_error(const TransitionMatrix& ideal, const Rational& epsilon) {
  if (epsilon < 0 || epsilon > 1)
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  const SystemConfig& base = ideal.config();
  if (base.error_prob != 0)
    throw std::invalid_argument("apply_channel_error expects an ideal (epsilon = 0) matrix");

  const int n = base.stations;
  const int dim = n + 1;
  const Rational keep = 1 - epsilon;
  std::vector<Rational> entries(static_cast<std::size_t>(dim) * dim);
  for (int d = 0; d <= n; ++d) {
    for (int delta = 0; delta <= n; ++delta) {
      Rational p = 0;
      for (int i = delta; i <= n; ++i) {
        p += Rational(binomial(static_cast<unsigned>(i), static_cast<unsigned>(delta))) *
             pow_rational(epsilon, static_cast<unsigned>(i - delta)) *
             pow_rational(keep, static_cast<unsigned>(delta)) * ideal.at(d, i);
      }
      entries[static_cast<std::size_t>(d) * dim + delta] = std::move(p);
    }
  }

  SystemConfig cfg(base.slots_per_round, base.stations, epsilon);
  return TransitionMatrix(std::move(cfg), std::move(entries));
}

TransitionMatrix transition_matrix_for(const SystemConfig& config) {
  SystemConfig ideal(config.slots_per_round, config.stations, Rational(0));
  TransitionMatrix matrix = build_transition_matrix(ideal);
  if (config.error_prob == 0) return matrix;
  return apply_channel_error(matrix, config.error_prob);
}

}  // namespace eca
