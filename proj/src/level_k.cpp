#include "blotto/level_k.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "blotto/rng.hpp"

namespace blotto {

namespace {
constexpr int kStrongThreshold = 11;
}

int strong_count_for_level(int k) {
  if (k < 0 || k > 7) throw InfeasibleSpec("level must be in 0..7, got " + std::to_string(k));
  return k == 0 ? 1 : kNumStates - k;
}

Allocation generate_level_k_allocation(const LevelKSpec& spec) {
  const int strong = spec.strong_count;
  const int weak = kNumStates - strong;
  if (strong < 1 || strong > 8) {
    throw InfeasibleSpec("InfeasibleSpec: strong_count must be in 1..8, got " +
                         std::to_string(strong));
  }
  if (spec.weak_trips < 0 || spec.weak_trips > kStrongThreshold) {
    throw InfeasibleSpec("InfeasibleSpec: weak_trips must be in 0..11, got " +
                         std::to_string(spec.weak_trips));
  }
  const int residual = kBudget - weak * spec.weak_trips;
  if (residual < strong * (kStrongThreshold + 1)) {
    throw InfeasibleSpec("InfeasibleSpec: " + std::to_string(residual) +
                         " trips cannot give " + std::to_string(strong) +
                         " states more than 11 each");
  }

  std::vector<int> order(kNumStates);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed);
  rng.shuffle(order);

  std::array<int, kNumStates> trips{};
  trips.fill(spec.weak_trips);
  const int base = residual / strong;
  const int extra = residual % strong;
  for (int i = 0; i < strong; ++i) {
    trips[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = base + (i < extra ? 1 : 0);
  }
  return Allocation::from(std::span<const int>(trips));
}

}  // namespace blotto
