#pragma once

#include <cstdint>
#include <stdexcept>

#include "blotto/core.hpp"

namespace blotto {

// Template for a heuristic "sacrifice some states" strategy. Level 0 is the
// near-uniform special case (one strong state); level k >= 1 has 9 - k strong
// states.
struct LevelKSpec {
  int strong_count = 5;  // states receiving more than 11 trips, 1..8
  int weak_trips = 0;    // trips placed in each sacrificed state, 0..11
  std::uint64_t seed = 0;
};

class InfeasibleSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Strong states are chosen by a seeded shuffle; the residual budget is split
// across them as evenly as possible with the larger shares going to the
// earlier-selected states. The result always spends exactly 100 trips.
// Throws InfeasibleSpec.
Allocation generate_level_k_allocation(const LevelKSpec& spec);

// Strong-state count for reasoning level k (0 -> 1, k >= 1 -> 9 - k).
int strong_count_for_level(int k);

}  // namespace blotto
