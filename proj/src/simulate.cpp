#include "eca/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eca/kernels.hpp"
#include "eca/prng.hpp"
#include "eca/stats.hpp"

namespace eca {

std::uint64_t bernoulli_threshold(const Rational& p) {
  if (p <= 0) return 0;
  if (p >= 1) throw std::invalid_argument("bernoulli_threshold requires p < 1");
  const BigInt scaled = (numerator(p) << 64) / denominator(p);
  return scaled.convert_to<std::uint64_t>();
}

// Draw order per round is part of the reproducibility contract: stations
// 0..N-1 draw slots in index order (random-mode stations only), then under
// epsilon > 0 the collision-free stations draw their error check in index
// order. Deterministic stations consume no slot draws.
struct Simulation::Impl {
  SystemConfig config;
  std::vector<StationStream> streams;
  std::vector<StationState> states;
  std::vector<int> occupancy;
  RoundOutcome outcome;
  std::uint64_t rounds = 0;
  std::uint64_t error_threshold = 0;
  bool errors_on = false;
  bool errors_certain = false;

  Impl(const SystemConfig& cfg, std::uint64_t seed) : config(cfg) {
    const int n = cfg.stations;
    streams.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      streams.emplace_back(seed, static_cast<std::uint32_t>(i));
    states.assign(static_cast<std::size_t>(n), StationState{});
    occupancy.assign(static_cast<std::size_t>(cfg.slots_per_round), 0);
    outcome.per_station_success.assign(static_cast<std::size_t>(n), 0);
    errors_on = cfg.error_prob != 0;
    errors_certain = cfg.error_prob == 1;
    if (errors_on && !errors_certain) error_threshold = bernoulli_threshold(cfg.error_prob);
  }

  const RoundOutcome& step() {
    const int n = config.stations;
    const auto b = static_cast<std::uint32_t>(config.slots_per_round);

    for (int i = 0; i < n; ++i) {
      if (states[i].mode == StationMode::kRandom) states[i].slot = streams[i].next_slot(b);
    }

    std::fill(occupancy.begin(), occupancy.end(), 0);
    for (int i = 0; i < n; ++i) ++occupancy[states[i].slot];

    int successes = 0;
    int collided = 0;
    int error_failed = 0;
    for (int i = 0; i < n; ++i) {
      const bool alone = occupancy[states[i].slot] == 1;
      bool success = alone;
      if (alone) {
        if (errors_certain) {
          success = false;
          ++error_failed;
        } else if (errors_on) {
          if (streams[i].next() < error_threshold) {
            success = false;
            ++error_failed;
          }
        }
      } else {
        ++collided;
      }
      states[i].mode = success ? StationMode::kDeterministic : StationMode::kRandom;
      outcome.per_station_success[i] = success ? 1 : 0;
      if (success) ++successes;
    }

    ++rounds;
    outcome.round_index = rounds;
    outcome.successes = successes;
    outcome.collided = collided;
    outcome.error_failed = error_failed;
    return outcome;
  }
};

Simulation::Simulation(const SystemConfig& config, std::uint64_t seed)
    : impl_(new Impl(config, seed)) {}

Simulation::~Simulation() { delete impl_; }

const RoundOutcome& Simulation::step() { return impl_->step(); }

const std::vector<StationState>& Simulation::stations() const { return impl_->states; }

std::uint64_t Simulation::rounds_played() const { return impl_->rounds; }

const SystemConfig& Simulation::config() const { return impl_->config; }

ConvergenceResult run_convergence(const SystemConfig& config, std::uint64_t seed,
                                  std::uint64_t round_cap) {
  if (config.error_prob != 0)
    throw std::invalid_argument("run_convergence requires error_prob == 0");
  if (round_cap < 1) throw std::invalid_argument("round_cap must be >= 1");

  Simulation sim(config, seed);
  for (std::uint64_t round = 1; round <= round_cap; ++round) {
    if (sim.step().successes == config.stations) return {true, round};
  }
  return {false, 0};
}

BatchResult run_batch(const SystemConfig& config, std::uint64_t base_seed, std::uint64_t count,
                      std::uint64_t round_cap, Kernel kernel) {
  if (count < 1) throw std::invalid_argument("run count must be >= 1");
  if (config.error_prob != 0)
    throw std::invalid_argument("run_batch requires error_prob == 0");

  std::vector<std::uint64_t> rounds(count);
  kernels::convergence_batch(config, base_seed, round_cap, rounds, kernel);

  BatchResult result;
  result.requested_runs = count;
  result.base_seed = base_seed;
  result.round_cap = round_cap;

  std::vector<std::uint64_t> completed;
  completed.reserve(count);
  for (std::uint64_t r : rounds) {
    if (r == 0) {
      ++result.capped_runs;
    } else {
      completed.push_back(r);
      ++result.histogram[r];
    }
  }
  result.completed_runs = completed.size();

  const SummaryStats stats = summarize(std::span<const std::uint64_t>(completed));
  result.mean = stats.mean;
  result.stddev = stats.stddev;
  result.stderr_mean = stats.stderr_mean;
  return result;
}

ErrorChannelResult run_error_channel(const SystemConfig& config, std::uint64_t seed,
                                     std::uint64_t rounds) {
  if (config.error_prob == 0)
    throw std::invalid_argument("run_error_channel requires error_prob > 0");
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");

  ErrorChannelResult result;
  result.rounds = rounds;
  result.seed = seed;
  result.successes_per_round.reserve(rounds);

  Simulation sim(config, seed);
  std::uint64_t total = 0;
  for (std::uint64_t t = 0; t < rounds; ++t) {
    const RoundOutcome& outcome = sim.step();
    result.successes_per_round.push_back(static_cast<std::uint32_t>(outcome.successes));
    total += static_cast<std::uint64_t>(outcome.successes);
  }
  result.mean_successes = static_cast<double>(total) / static_cast<double>(rounds);
  result.stderr_mean = batch_means_stderr(result.successes_per_round);
  return result;
}

std::vector<std::vector<std::uint64_t>> tally_transitions(const SystemConfig& config,
                                                          std::uint64_t base_seed,
                                                          std::uint64_t total_rounds) {
  if (config.error_prob != 0)
    throw std::invalid_argument("tally_transitions requires error_prob == 0");
  const int n = config.stations;
  std::vector<std::vector<std::uint64_t>> counts(
      static_cast<std::size_t>(n) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));

  std::uint64_t recorded = 0;
  std::uint64_t run = 0;
  while (recorded < total_rounds) {
    Simulation sim(config, batch_run_seed(base_seed, run++));
    int current = 0;  // every run starts in S_0
    while (recorded < total_rounds) {
      const int next = sim.step().successes;
      ++counts[current][next];
      ++recorded;
      if (next == n) break;  // absorbed; restart with the next seed
      current = next;
    }
  }
  return counts;
}

}  // namespace eca
