#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "blotto/core.hpp"

namespace blotto {

// Best response to a fixed opponent pool, maximising the expected number of
// states won per duel (ties worth half). The objective is separable by
// state, so a budget knapsack over per-state value tables solves it exactly.
struct BestResponse {
  std::vector<int> allocation;
  // Half-votes summed over the whole pool; expected states = value_half / (2 * pool size).
  long long value_half = 0;
  boost::rational<long long> expected_states{0};
};

// Generic form over any number of states and budget. Among optimal
// allocations the lexicographically smallest is returned. Throws
// std::invalid_argument on an empty pool or a mis-sized opponent.
BestResponse best_response(std::span<const std::vector<int>> pool, int num_states, int budget);

// The Electoral Race instance: nine states, budget 100.
std::pair<Allocation, boost::rational<long long>> best_response_expected_states(
    std::span<const Allocation> pool);

}  // namespace blotto
