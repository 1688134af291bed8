#include "blotto/best_response.hpp"

#include <algorithm>
#include <string>

namespace blotto {

BestResponse best_response(std::span<const std::vector<int>> pool, int num_states, int budget) {
  if (pool.empty()) throw std::invalid_argument("best_response: empty pool");
  if (num_states < 1 || budget < 0) throw std::invalid_argument("best_response: bad game size");
  for (const auto& opp : pool) {
    if (static_cast<int>(opp.size()) != num_states) {
      throw std::invalid_argument("best_response: opponent has " + std::to_string(opp.size()) +
                                  " entries, expected " + std::to_string(num_states));
    }
  }
  const auto n = static_cast<std::size_t>(num_states);
  const auto width = static_cast<std::size_t>(budget) + 1;

  // value[s][t]: half-votes collected in state s against the whole pool by
  // placing t trips there. Built from a histogram of opponent entries.
  std::vector<std::vector<long long>> value(n, std::vector<long long>(width, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<long long> hist(width, 0);
    for (const auto& opp : pool) {
      if (opp[s] < 0) throw std::invalid_argument("best_response: negative opponent entry");
      // Entries above the budget can be neither beaten nor tied.
      if (opp[s] <= budget) ++hist[static_cast<std::size_t>(opp[s])];
    }
    long long strictly_below = 0;
    for (std::size_t t = 0; t < width; ++t) {
      value[s][t] = 2 * strictly_below + hist[t];
      strictly_below += hist[t];
    }
  }

  // best[s][b]: optimum over states s..n-1 with b trips left.
  std::vector<std::vector<long long>> best(n + 1, std::vector<long long>(width, 0));
  for (std::size_t s = n; s-- > 0;) {
    for (std::size_t b = 0; b < width; ++b) {
      long long m = 0;
      for (std::size_t t = 0; t <= b; ++t) m = std::max(m, value[s][t] + best[s + 1][b - t]);
      best[s][b] = m;
    }
  }

  BestResponse out;
  out.value_half = best[0][width - 1];
  out.allocation.resize(n);
  std::size_t remaining = width - 1;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t <= remaining; ++t) {
      if (value[s][t] + best[s + 1][remaining - t] == best[s][remaining]) {
        out.allocation[s] = static_cast<int>(t);
        remaining -= t;
        break;
      }
    }
  }
  out.expected_states =
      boost::rational<long long>(out.value_half, 2 * static_cast<long long>(pool.size()));
  return out;
}

std::pair<Allocation, boost::rational<long long>> best_response_expected_states(
    std::span<const Allocation> pool) {
  std::vector<std::vector<int>> opponents;
  opponents.reserve(pool.size());
  for (const auto& a : pool) opponents.emplace_back(a.trips().begin(), a.trips().end());
  const auto br = best_response(opponents, kNumStates, kBudget);
  return {Allocation::from(std::span<const int>(br.allocation)), br.expected_states};
}

}  // namespace blotto
