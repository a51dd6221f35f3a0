#include "eca/analysis.hpp"

#include <stdexcept>
#include <utility>

namespace eca {

namespace {

// Exact Gauss-Jordan solve of A x = rhs (column vector), A square. Pivots on
// the first nonzero entry; with rational arithmetic there is no roundoff to
// manage. Throws on a singular system.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a,
                                  std::vector<Rational> rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);

    const Rational inv = Rational(1) / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    rhs[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      rhs[row] -= factor * rhs[col];
    }
  }
  return rhs;
}

// Exact inverse by Gauss-Jordan on [A | I].
std::vector<std::vector<Rational>> invert_exact(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);

    const Rational scale = Rational(1) / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= factor * a[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

FundamentalMatrix::FundamentalMatrix(SystemConfig config, std::vector<Rational> row_major_entries)
    : config_(std::move(config)), entries_(std::move(row_major_entries)) {
  const std::size_t n = static_cast<std::size_t>(config_.stations);
  if (entries_.size() != n * n)
    throw std::invalid_argument("fundamental matrix entry count does not match N^2");
}

const Rational& FundamentalMatrix::at(int i, int j) const {
  const int n = dimension();
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::out_of_range("fundamental matrix index out of range");
  return entries_[static_cast<std::size_t>(i) * n + j];
}

FundamentalMatrix fundamental_matrix(const TransitionMatrix& matrix) {
  const SystemConfig& cfg = matrix.config();
  if (cfg.error_prob != 0)
    throw std::invalid_argument(
        "fundamental_matrix requires an absorbing (epsilon = 0) chain");
  const int n = cfg.stations;

  // I - Q, Q = transient block (rows/cols 0..N-1).
  std::vector<std::vector<Rational>> i_minus_q(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      i_minus_q[i][j] = (i == j ? Rational(1) : Rational(0)) - matrix.at(i, j);

  std::vector<std::vector<Rational>> inv;
  try {
    inv = invert_exact(std::move(i_minus_q));
  } catch (const std::runtime_error&) {
    throw std::runtime_error("internal consistency failure: I - Q is singular");
  }

  std::vector<Rational> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (auto& row : inv)
    for (auto& value : row) entries.push_back(std::move(value));
  return FundamentalMatrix(cfg, std::move(entries));
}

Rational expected_steps_to_absorption(const FundamentalMatrix& fm, int start) {
  const int n = fm.dimension();
  if (start < 0 || start > n)
    throw std::invalid_argument("start state must lie in 0..N");
  if (start == n) return 0;  // already absorbed
  Rational sum = 0;
  for (int j = 0; j < n; ++j) sum += fm.at(start, j);
  return sum;
}

StateDistribution stationary_distribution(const TransitionMatrix& matrix, bool allow_absorbing) {
  const SystemConfig& cfg = matrix.config();
  const int dim = matrix.dimension();

  if (cfg.error_prob == 0) {
    if (!allow_absorbing)
      throw std::invalid_argument(
          "stationary distribution of an absorbing chain is degenerate; "
          "use absorption analysis or pass allow_absorbing");
    StateDistribution pi;
    pi.probs.assign(static_cast<std::size_t>(dim), Rational(0));
    pi.probs.back() = 1;
    return pi;
  }
  if (cfg.error_prob == 1)
    throw std::invalid_argument("stationary distribution requires 0 < epsilon < 1");

  // Solve pi P = pi, sum(pi) = 1: rows j of (P^T - I) x = 0 with the last
  // equation replaced by the normalization.
  std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim));
  std::vector<Rational> rhs(static_cast<std::size_t>(dim), Rational(0));
  for (int j = 0; j < dim - 1; ++j) {
    for (int i = 0; i < dim; ++i)
      a[j][i] = matrix.at(i, j) - (i == j ? Rational(1) : Rational(0));
  }
  for (int i = 0; i < dim; ++i) a[dim - 1][i] = 1;
  rhs.back() = 1;

  std::vector<Rational> pi_vec = solve_exact(std::move(a), std::move(rhs));

  // pi P = pi must hold exactly; anything else is an internal failure.
  for (int j = 0; j < dim; ++j) {
    Rational acc = 0;
    for (int i = 0; i < dim; ++i) acc += pi_vec[i] * matrix.at(i, j);
    if (acc != pi_vec[j])
      throw std::runtime_error("internal consistency failure: pi P != pi");
  }

  StateDistribution pi;
  pi.probs = std::move(pi_vec);
  return pi;
}

Rational expected_successes_per_round(const StateDistribution& pi) {
  Rational total = 0;
  Rational mass = 0;
  for (int delta = 0; delta < pi.states(); ++delta) {
    if (pi.probs[delta] < 0) throw std::invalid_argument("distribution has negative mass");
    total += Rational(delta) * pi.probs[delta];
    mass += pi.probs[delta];
  }
  if (mass != 1) throw std::invalid_argument("distribution does not sum to 1");
  return total;
}

}  // namespace eca
