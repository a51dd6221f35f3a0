#pragma once

// Batch convergence kernels behind run_batch. The scalar kernel is the
// reference; the AVX2 kernel runs four seeds per vector lane and must produce
// bit-identical results (enforced by tests). Dispatch is at runtime.

#include <cstdint>
#include <span>

#include "eca/config.hpp"
#include "eca/simulate.hpp"

namespace eca::kernels {

/// out[k] = convergence round of the run seeded base_seed + k, or 0 when the
/// run did not converge within round_cap.
void convergence_batch_scalar(const SystemConfig& config, std::uint64_t base_seed,
                              std::uint64_t round_cap, std::span<std::uint64_t> out);

#if defined(ECA_HAVE_AVX2)
/// Four runs per 256-bit lane group; requires B <= 64 and AVX2 hardware.
void convergence_batch_avx2(const SystemConfig& config, std::uint64_t base_seed,
                            std::uint64_t round_cap, std::span<std::uint64_t> out);
#endif

bool avx2_supported();

/// True when `kernel` would execute the AVX2 path for this config.
bool resolves_to_avx2(const SystemConfig& config, Kernel kernel);

/// Runs the batch with the requested kernel. Throws std::invalid_argument if
/// kAvx2 is forced on unsupported hardware or with B > 64.
void convergence_batch(const SystemConfig& config, std::uint64_t base_seed,
                       std::uint64_t round_cap, std::span<std::uint64_t> out, Kernel kernel);

}  // namespace eca::kernels
