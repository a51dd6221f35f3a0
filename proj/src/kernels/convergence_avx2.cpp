// AVX2 variant of the batch convergence kernel: four runs per 256-bit vector,
// one 64-bit lane each. Slot occupancy is the same seen/shared bitmask scheme
// as the scalar B <= 64 path, and the SplitMix64 streams advance lane-masked,
// so per-run draw sequences are identical to the scalar kernel's.

#if defined(ECA_HAVE_AVX2)

#include <immintrin.h>

#include <bit>
#include <cstring>
#include <vector>

#include "eca/kernels.hpp"
#include "eca/prng.hpp"

namespace eca::kernels {

namespace {

constexpr int kLanes = 4;

// 64x64 -> low 64 multiply by a constant; AVX2 has only 32x32 -> 64.
inline __m256i mullo64_const(__m256i a, std::uint64_t c) {
  const __m256i c_lo = _mm256_set1_epi64x(static_cast<long long>(c & 0xffffffffULL));
  const __m256i c_hi = _mm256_set1_epi64x(static_cast<long long>(c >> 32));
  const __m256i lo = _mm256_mul_epu32(a, c_lo);
  const __m256i mid1 = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), c_lo);
  const __m256i mid2 = _mm256_mul_epu32(a, c_hi);
  return _mm256_add_epi64(lo, _mm256_slli_epi64(_mm256_add_epi64(mid1, mid2), 32));
}

inline __m256i split_mix64_finalize_vec(__m256i x) {
  x = _mm256_xor_si256(x, _mm256_srli_epi64(x, 30));
  x = mullo64_const(x, 0xbf58476d1ce4e5b9ULL);
  x = _mm256_xor_si256(x, _mm256_srli_epi64(x, 27));
  x = mullo64_const(x, 0x94d049bb133111ebULL);
  return _mm256_xor_si256(x, _mm256_srli_epi64(x, 31));
}

inline bool any_lane(__m256i mask) { return !_mm256_testz_si256(mask, mask); }

// Fresh slot bit (1 << slot) for every lane selected by `need`; advances the
// stream state only on lanes still drawing (masked rejection, identical to
// StationStream::next_slot).
inline __m256i draw_slot_bits(__m256i& state, __m256i need, std::uint32_t slot_count,
                              __m256i draw_mask, __m256i slot_limit, __m256i gamma,
                              __m256i one) {
  __m256i result = _mm256_setzero_si256();
  __m256i active = need;
  while (any_lane(active)) {
    state = _mm256_add_epi64(state, _mm256_and_si256(gamma, active));
    const __m256i v = _mm256_and_si256(split_mix64_finalize_vec(state), draw_mask);
    // v <= mask < 128, so a signed 64-bit compare is safe.
    const __m256i ok = _mm256_cmpgt_epi64(slot_limit, v);
    const __m256i take = _mm256_and_si256(active, ok);
    result = _mm256_blendv_epi8(result, _mm256_sllv_epi64(one, v), take);
    active = _mm256_andnot_si256(ok, active);
  }
  (void)slot_count;
  return result;
}

}  // namespace

void convergence_batch_avx2(const SystemConfig& config, std::uint64_t base_seed,
                            std::uint64_t round_cap, std::span<std::uint64_t> out) {
  const int n = config.stations;
  const auto b = static_cast<std::uint32_t>(config.slots_per_round);
  if (b > 64) throw std::invalid_argument("AVX2 kernel requires B <= 64");

  const std::uint64_t draw_mask_scalar = std::bit_ceil(static_cast<std::uint64_t>(b)) - 1;
  const __m256i draw_mask = _mm256_set1_epi64x(static_cast<long long>(draw_mask_scalar));
  const __m256i slot_limit = _mm256_set1_epi64x(static_cast<long long>(b));
  const __m256i gamma = _mm256_set1_epi64x(static_cast<long long>(kSplitMix64Gamma));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i all_ones = _mm256_set1_epi64x(-1);

  // Lane storage as plain uint64 words (4 per station) accessed with
  // unaligned loads; keeps std::vector out of the over-aligned-type business.
  std::vector<std::uint64_t> state_words(static_cast<std::size_t>(n) * kLanes);
  std::vector<std::uint64_t> slot_words(static_cast<std::size_t>(n) * kLanes);
  std::vector<std::uint64_t> det_words(static_cast<std::size_t>(n) * kLanes);
  const auto load = [](std::vector<std::uint64_t>& words, int i) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + i * kLanes));
  };
  const auto store = [](std::vector<std::uint64_t>& words, int i, __m256i value) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(words.data() + i * kLanes), value);
  };

  for (std::size_t group = 0; group < out.size(); group += kLanes) {
    const int lanes = static_cast<int>(std::min<std::size_t>(kLanes, out.size() - group));

    alignas(32) std::uint64_t seeds[kLanes] = {0, 0, 0, 0};
    alignas(32) std::uint64_t done_init[kLanes];
    for (int l = 0; l < kLanes; ++l) {
      if (l < lanes) {
        seeds[l] = batch_run_seed(base_seed, group + static_cast<std::size_t>(l));
        done_init[l] = 0;
      } else {
        done_init[l] = ~std::uint64_t(0);  // padding lane: born done
      }
    }
    const __m256i run_seed = _mm256_load_si256(reinterpret_cast<const __m256i*>(seeds));
    __m256i done = _mm256_load_si256(reinterpret_cast<const __m256i*>(done_init));

    for (int i = 0; i < n; ++i) {
      const __m256i offset =
          _mm256_set1_epi64x(static_cast<long long>((static_cast<std::uint64_t>(i) + 1) *
                                                    kSplitMix64Gamma));
      store(state_words, i, split_mix64_finalize_vec(_mm256_add_epi64(run_seed, offset)));
      store(slot_words, i, _mm256_setzero_si256());
      store(det_words, i, _mm256_setzero_si256());
    }

    alignas(32) std::uint64_t rounds_out[kLanes] = {0, 0, 0, 0};

    for (std::uint64_t round = 1; round <= round_cap; ++round) {
      __m256i seen = _mm256_setzero_si256();
      __m256i shared = _mm256_setzero_si256();
      const __m256i active = _mm256_andnot_si256(done, all_ones);

      for (int i = 0; i < n; ++i) {
        const __m256i need = _mm256_andnot_si256(load(det_words, i), active);
        __m256i state = load(state_words, i);
        const __m256i fresh = draw_slot_bits(state, need, b, draw_mask, slot_limit, gamma, one);
        store(state_words, i, state);
        const __m256i stored = load(slot_words, i);
        const __m256i bit = _mm256_blendv_epi8(stored, fresh, need);
        store(slot_words, i, _mm256_blendv_epi8(stored, bit, active));
        const __m256i contrib = _mm256_and_si256(bit, active);
        shared = _mm256_or_si256(shared, _mm256_and_si256(seen, contrib));
        seen = _mm256_or_si256(seen, contrib);
      }

      const __m256i success_slots = _mm256_andnot_si256(shared, seen);
      alignas(32) std::uint64_t succ[kLanes];
      alignas(32) std::uint64_t done_arr[kLanes];
      _mm256_store_si256(reinterpret_cast<__m256i*>(succ), success_slots);
      _mm256_store_si256(reinterpret_cast<__m256i*>(done_arr), done);
      bool all_done = true;
      for (int l = 0; l < kLanes; ++l) {
        if (done_arr[l]) continue;
        if (std::popcount(succ[l]) == n) {
          rounds_out[l] = round;
          done_arr[l] = ~std::uint64_t(0);
        } else {
          all_done = false;
        }
      }
      const __m256i done_next = _mm256_load_si256(reinterpret_cast<const __m256i*>(done_arr));

      // Mode update for lanes that played this round and are still going.
      const __m256i still_active = _mm256_andnot_si256(done_next, active);
      for (int i = 0; i < n; ++i) {
        const __m256i alone = _mm256_and_si256(load(slot_words, i), success_slots);
        const __m256i is_success =
            _mm256_xor_si256(_mm256_cmpeq_epi64(alone, _mm256_setzero_si256()), all_ones);
        store(det_words, i, _mm256_blendv_epi8(load(det_words, i), is_success, still_active));
      }

      done = done_next;
      if (all_done) break;
    }

    for (int l = 0; l < lanes; ++l) out[group + static_cast<std::size_t>(l)] = rounds_out[l];
  }
}

}  // namespace eca::kernels

#endif  // ECA_HAVE_AVX2
