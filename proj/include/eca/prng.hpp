#pragma once

// Seeded, reproducible random streams for the simulator.
//
// Generator: SplitMix64 (Steele, Lea, Flood 2014), used in substream form.
// Station i of a run with seed s draws from a SplitMix64 sequence whose
// initial state is finalize(s + (i+1) * gamma); batch run k uses seed
// base_seed + k. Every draw is one state step, so traces are bit-identical
// across platforms and across the scalar and SIMD batch kernels.

#include <bit>
#include <cstdint>

#include "eca/rational.hpp"

namespace eca {

inline constexpr std::uint64_t kSplitMix64Gamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t split_mix64_finalize(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t station_stream_seed(std::uint64_t run_seed, std::uint32_t station) {
  return split_mix64_finalize(run_seed + (static_cast<std::uint64_t>(station) + 1) * kSplitMix64Gamma);
}

/// Per-station SplitMix64 substream.
class StationStream {
 public:
  StationStream(std::uint64_t run_seed, std::uint32_t station)
      : state_(station_stream_seed(run_seed, station)) {}

  std::uint64_t next() {
    state_ += kSplitMix64Gamma;
    return split_mix64_finalize(state_);
  }

  /// Unbiased uniform draw from {0, ..., slot_count-1} by power-of-two
  /// masking with rejection. One next() per attempt.
  std::uint32_t next_slot(std::uint32_t slot_count) {
    const std::uint64_t mask = std::bit_ceil(static_cast<std::uint64_t>(slot_count)) - 1;
    for (;;) {
      const std::uint64_t v = next() & mask;
      if (v < slot_count) return static_cast<std::uint32_t>(v);
    }
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Seed of the k-th run in a batch starting at base_seed. Running
/// run_convergence(config, base_seed + k) reproduces batch member k exactly.
constexpr std::uint64_t batch_run_seed(std::uint64_t base_seed, std::uint64_t run_index) {
  return base_seed + run_index;
}

/// floor(p * 2^64) for a rational p in [0, 1); a uniform 64-bit draw u
/// signals the event iff u < threshold. The bias is below 2^-64.
std::uint64_t bernoulli_threshold(const Rational& p);

}  // namespace eca
