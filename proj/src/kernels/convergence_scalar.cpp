#include <vector>

#include "eca/kernels.hpp"
#include "eca/prng.hpp"

namespace eca::kernels {

// Reference kernel: one run at a time, straight off the protocol definition.
// Occupancy goes through a pair of bitmasks when B <= 64 and through a count
// array otherwise; both paths consume identical draws, so results match.
void convergence_batch_scalar(const SystemConfig& config, std::uint64_t base_seed,
                              std::uint64_t round_cap, std::span<std::uint64_t> out) {
  const int n = config.stations;
  const auto b = static_cast<std::uint32_t>(config.slots_per_round);
  const bool mask_path = b <= 64;

  std::vector<StationStream> streams;
  streams.reserve(static_cast<std::size_t>(n));
  std::vector<std::uint32_t> slots(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> deterministic(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> occupancy;
  if (!mask_path) occupancy.assign(b, 0);

  for (std::size_t run = 0; run < out.size(); ++run) {
    const std::uint64_t seed = batch_run_seed(base_seed, run);
    streams.clear();
    for (int i = 0; i < n; ++i) streams.emplace_back(seed, static_cast<std::uint32_t>(i));
    std::fill(deterministic.begin(), deterministic.end(), 0);

    out[run] = 0;
    for (std::uint64_t round = 1; round <= round_cap; ++round) {
      for (int i = 0; i < n; ++i) {
        if (!deterministic[i]) slots[i] = streams[i].next_slot(b);
      }

      int successes = 0;
      if (mask_path) {
        std::uint64_t seen = 0;
        std::uint64_t shared = 0;
        for (int i = 0; i < n; ++i) {
          const std::uint64_t bit = std::uint64_t(1) << slots[i];
          shared |= seen & bit;
          seen |= bit;
        }
        for (int i = 0; i < n; ++i) {
          const bool alone = (shared & (std::uint64_t(1) << slots[i])) == 0;
          deterministic[i] = alone ? 1 : 0;
          if (alone) ++successes;
        }
      } else {
        std::fill(occupancy.begin(), occupancy.end(), 0);
        for (int i = 0; i < n; ++i) {
          if (occupancy[slots[i]] < 2) ++occupancy[slots[i]];
        }
        for (int i = 0; i < n; ++i) {
          const bool alone = occupancy[slots[i]] == 1;
          deterministic[i] = alone ? 1 : 0;
          if (alone) ++successes;
        }
      }

      if (successes == n) {
        out[run] = round;
        break;
      }
    }
  }
}

}  // namespace eca::kernels
