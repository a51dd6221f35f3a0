#include <stdexcept>

#include "eca/kernels.hpp"

namespace eca::kernels {

bool avx2_supported() {
#if defined(ECA_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

bool resolves_to_avx2(const SystemConfig& config, Kernel kernel) {
  if (kernel == Kernel::kScalar) return false;
  const bool eligible = avx2_supported() && config.slots_per_round <= 64;
  if (kernel == Kernel::kAuto) return eligible;
  if (!eligible)
    throw std::invalid_argument("AVX2 kernel unavailable (needs AVX2 hardware and B <= 64)");
  return true;
}

void convergence_batch(const SystemConfig& config, std::uint64_t base_seed,
                       std::uint64_t round_cap, std::span<std::uint64_t> out, Kernel kernel) {
  if (config.error_prob != 0)
    throw std::invalid_argument("convergence kernels require error_prob == 0");
  if (round_cap < 1) throw std::invalid_argument("round_cap must be >= 1");
  if (out.empty()) return;

  // Pigeonhole: with N > B every run is cap-exceeded; skip playing the rounds.
  if (config.stations > config.slots_per_round) {
    std::fill(out.begin(), out.end(), std::uint64_t(0));
    return;
  }

#if defined(ECA_HAVE_AVX2)
  if (resolves_to_avx2(config, kernel)) {
    convergence_batch_avx2(config, base_seed, round_cap, out);
    return;
  }
#else
  if (kernel == Kernel::kAvx2)
    throw std::invalid_argument("AVX2 kernel not compiled into this build");
#endif
  convergence_batch_scalar(config, base_seed, round_cap, out);
}

}  // namespace eca::kernels
