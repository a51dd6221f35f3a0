#include "eca/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace eca {

namespace {

// Outcome tallies by number of collision-free stations, from exhaustive
// enumeration of the random stations' slot choices. A mixed-radix counter
// walks all B^(N-d) assignments; per outcome a B-length occupancy array is
// rebuilt and slots with exactly one occupant are counted.
std::vector<BigInt> tally_by_successes(int slots, int stations,
                                       const std::vector<int>& deterministic_slots) {
  const int b = slots;
  const int n = stations;
  const int d = static_cast<int>(deterministic_slots.size());

  SystemConfig probe(b, n);  // validates B, N
  probe.require_feasible();
  if (d >= n) throw std::invalid_argument("enumeration requires d < N");
  {
    std::vector<int> sorted = deterministic_slots;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("deterministic slots must be distinct");
    for (int s : sorted)
      if (s < 0 || s >= b) throw std::invalid_argument("deterministic slot out of range");
  }

  const int random_count = n - d;
  const BigInt total = int_pow(BigInt(b), static_cast<unsigned>(random_count));
  if (total > kEnumerationBudget)
    throw std::invalid_argument("enumeration budget exceeded: B^(N-d) > 10^7");

  std::vector<BigInt> tally(static_cast<std::size_t>(n) + 1, BigInt(0));
  std::vector<int> choice(static_cast<std::size_t>(random_count), 0);
  std::vector<int> occupancy(static_cast<std::size_t>(b), 0);

  for (;;) {
    std::fill(occupancy.begin(), occupancy.end(), 0);
    for (int s : deterministic_slots) ++occupancy[s];
    for (int c : choice) ++occupancy[c];
    int successes = 0;
    for (int s = 0; s < b; ++s)
      if (occupancy[s] == 1) ++successes;
    ++tally[successes];

    int pos = random_count - 1;
    while (pos >= 0 && choice[pos] == b - 1) {
      choice[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++choice[pos];
  }
  return tally;
}

std::vector<int> default_placement(int d) {
  std::vector<int> slots(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) slots[i] = i;
  return slots;
}

}  // namespace

ExactDistribution enumerate_transition_placed(int slots, int stations,
                                              const std::vector<int>& deterministic_slots) {
  const std::vector<BigInt> tally = tally_by_successes(slots, stations, deterministic_slots);
  const BigInt total =
      int_pow(BigInt(slots), static_cast<unsigned>(stations - deterministic_slots.size()));

  ExactDistribution dist;
  dist.total_outcomes = total;
  dist.probs.reserve(tally.size());
  for (const BigInt& count : tally) dist.probs.emplace_back(count, total);
  return dist;
}

ExactDistribution enumerate_transition(int slots, int stations, int d) {
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  return enumerate_transition_placed(slots, stations, default_placement(d));
}

ExactDistribution enumerate_error_transition(int slots, int stations, int d,
                                             const Rational& epsilon) {
  if (epsilon < 0 || epsilon > 1) throw std::invalid_argument("epsilon must lie in [0, 1]");
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  const std::vector<BigInt> tally = tally_by_successes(slots, stations, default_placement(d));
  const BigInt total = int_pow(BigInt(slots), static_cast<unsigned>(stations - d));

  // Each outcome with i collision-free stations spreads over delta <= i with
  // the exact binomial weight.
  const int n = stations;
  const Rational keep = 1 - epsilon;
  ExactDistribution dist;
  dist.total_outcomes = total;
  dist.probs.assign(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int i = 0; i <= n; ++i) {
    if (tally[i] == 0) continue;
    const Rational outcome_mass(tally[i], total);
    for (int delta = 0; delta <= i; ++delta) {
      dist.probs[delta] +=
          outcome_mass *
          Rational(binomial(static_cast<unsigned>(i), static_cast<unsigned>(delta))) *
          pow_rational(epsilon, static_cast<unsigned>(i - delta)) *
          pow_rational(keep, static_cast<unsigned>(delta));
    }
  }
  return dist;
}

}  // namespace eca
