#pragma once

// Monte Carlo implementation of the protocol: a station that succeeded keeps
// its slot in the next round, a station that failed (collision or channel
// error) picks a fresh uniform slot. Runs are pure functions of
// (config, seed) and reproduce bit-identically.

#include <cstdint>
#include <map>
#include <vector>

#include "eca/config.hpp"

namespace eca {

inline constexpr std::uint64_t kDefaultRoundCap = 1'000'000;

enum class StationMode { kRandom, kDeterministic };

struct StationState {
  std::uint32_t slot = 0;  // 0-based slot index within the round
  StationMode mode = StationMode::kRandom;
};

struct RoundOutcome {
  std::uint64_t round_index = 0;  // 1-based
  int successes = 0;
  int collided = 0;      // stations that shared a slot
  int error_failed = 0;  // stations alone in a slot but hit by a channel error
  std::vector<std::uint8_t> per_station_success;
};

/// Single protocol run as a stepwise state machine. All N stations start in
/// random mode (state S_0).
class Simulation {
 public:
  Simulation(const SystemConfig& config, std::uint64_t seed);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Plays one round; the returned reference stays valid until the next step.
  const RoundOutcome& step();

  const std::vector<StationState>& stations() const;
  std::uint64_t rounds_played() const;
  const SystemConfig& config() const;

 private:
  struct Impl;
  Impl* impl_;
};

struct ConvergenceResult {
  bool converged = false;
  std::uint64_t rounds = 0;  // first round with N successes; valid when converged
};

/// Runs until the first round in which all N stations succeed, or until
/// round_cap rounds have been played. Requires error_prob == 0. A first-round
/// full success returns rounds == 1, matching the chain's step count.
ConvergenceResult run_convergence(const SystemConfig& config, std::uint64_t seed,
                                  std::uint64_t round_cap = kDefaultRoundCap);

/// Which batch kernel run_batch uses. kAuto picks the widest one the CPU
/// supports (AVX2 when available and B <= 64, scalar otherwise).
enum class Kernel { kAuto, kScalar, kAvx2 };

struct BatchResult {
  std::uint64_t requested_runs = 0;
  std::uint64_t completed_runs = 0;  // converged within the cap
  std::uint64_t capped_runs = 0;
  double mean = 0.0;    // over completed runs; NaN when none completed
  double stddev = 0.0;  // sample standard deviation; NaN when < 2 samples
  double stderr_mean = 0.0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // convergence round -> count
  std::uint64_t base_seed = 0;
  std::uint64_t round_cap = 0;
};

/// Aggregates run_convergence over runs seeded base_seed + 0 .. base_seed +
/// count - 1. Mean/stddev/stderr are over completed runs only.
BatchResult run_batch(const SystemConfig& config, std::uint64_t base_seed, std::uint64_t count,
                      std::uint64_t round_cap = kDefaultRoundCap, Kernel kernel = Kernel::kAuto);

struct ErrorChannelResult {
  std::uint64_t rounds = 0;
  std::vector<std::uint32_t> successes_per_round;
  double mean_successes = 0.0;
  double stderr_mean = 0.0;  // batch-means standard error (see stats.hpp)
  std::uint64_t seed = 0;
};

/// Plays `rounds` rounds under channel error probability config.error_prob
/// (must be > 0) and returns the full per-round success trace.
ErrorChannelResult run_error_channel(const SystemConfig& config, std::uint64_t seed,
                                     std::uint64_t rounds);

/// Observed transition counts of the embedded chain: plays ideal-channel runs
/// (restarting after each absorption) until total_rounds transitions are
/// tallied; counts[d][delta] is the number of rounds that moved S_d to
/// S_delta. Run k of the restart sequence uses seed base_seed + k.
std::vector<std::vector<std::uint64_t>> tally_transitions(const SystemConfig& config,
                                                          std::uint64_t base_seed,
                                                          std::uint64_t total_rounds);

}  // namespace eca
