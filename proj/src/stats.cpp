#include "eca/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace eca {

namespace {

template <typename T>
SummaryStats summarize_impl(std::span<const T> values) {
  SummaryStats s;
  s.count = values.size();
  if (s.count == 0) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.stddev = std::numeric_limits<double>::quiet_NaN();
    s.stderr_mean = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (T v : values) sum += static_cast<double>(v);
  s.mean = sum / static_cast<double>(s.count);
  if (s.count < 2) {
    s.stddev = std::numeric_limits<double>::quiet_NaN();
    s.stderr_mean = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double ss = 0.0;
  for (T v : values) {
    const double dev = static_cast<double>(v) - s.mean;
    ss += dev * dev;
  }
  s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
  s.stderr_mean = s.stddev / std::sqrt(static_cast<double>(s.count));
  return s;
}

}  // namespace

SummaryStats summarize(std::span<const std::uint64_t> values) { return summarize_impl(values); }
SummaryStats summarize(std::span<const std::uint32_t> values) { return summarize_impl(values); }

double batch_means_stderr(std::span<const std::uint32_t> series, int batches) {
  if (batches < 2) throw std::invalid_argument("batch count must be >= 2");
  const std::size_t n = series.size();
  const std::size_t batch_size = n / static_cast<std::size_t>(batches);
  if (batch_size < 2) {
    // Series too short for batching; fall back to the iid standard error.
    return summarize(series).stderr_mean;
  }

  double sum = 0.0;
  double ss = 0.0;
  std::vector<double> means(static_cast<std::size_t>(batches));
  for (int b = 0; b < batches; ++b) {
    double acc = 0.0;
    const std::size_t start = static_cast<std::size_t>(b) * batch_size;
    for (std::size_t i = start; i < start + batch_size; ++i) acc += series[i];
    means[b] = acc / static_cast<double>(batch_size);
    sum += means[b];
  }
  const double grand = sum / static_cast<double>(batches);
  for (double m : means) ss += (m - grand) * (m - grand);
  const double var_means = ss / static_cast<double>(batches - 1);
  return std::sqrt(var_means / static_cast<double>(batches));
}

double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected_probs) {
  if (observed.size() != expected_probs.size())
    throw std::invalid_argument("observed/expected size mismatch");
  std::uint64_t total = 0;
  for (std::uint64_t o : observed) total += o;
  if (total == 0) throw std::invalid_argument("no observations");

  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_probs[i] * static_cast<double>(total);
    if (expected_probs[i] <= 0.0) {
      if (observed[i] != 0) return std::numeric_limits<double>::infinity();
      continue;
    }
    const double dev = static_cast<double>(observed[i]) - expected;
    stat += dev * dev / expected;
  }
  return stat;
}

double chi_square_critical_001(int dof) {
  // Standard table, alpha = 0.001.
  static constexpr double kCritical[] = {10.827566170662733, 13.815510557964274,
                                         16.266236196238129, 18.466826952903151,
                                         20.515005652432873, 22.457744484825323,
                                         24.321886347856850, 26.124481558376136};
  if (dof < 1 || dof > 8) throw std::invalid_argument("dof outside tabled range 1..8");
  return kCritical[dof - 1];
}

}  // namespace eca
