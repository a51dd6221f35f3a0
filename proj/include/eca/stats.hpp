#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace eca {

struct SummaryStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;       // sample standard deviation (n-1); NaN when n < 2
  double stderr_mean = 0.0;  // stddev / sqrt(n); NaN when n < 2
};

SummaryStats summarize(std::span<const std::uint64_t> values);
SummaryStats summarize(std::span<const std::uint32_t> values);

/// Standard error of the mean of a correlated series via batch means: the
/// series is cut into `batches` equal batches (default 100; plain iid SE when
/// the series is shorter than 2 per batch) and the SE of the batch means is
/// returned.
double batch_means_stderr(std::span<const std::uint32_t> series, int batches = 100);

/// Pearson chi-square statistic of observed counts against expected
/// proportions. Bins with expected proportion 0 but nonzero observed count
/// yield +infinity (the model forbids them outright).
double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected_probs);

/// Upper critical value of the chi-square distribution at significance 0.001
/// for 1 <= dof <= 8.
double chi_square_critical_001(int dof);

}  // namespace eca
