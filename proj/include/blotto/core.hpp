#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace blotto {

inline constexpr int kNumStates = 9;
inline constexpr int kBudget = 100;
// Electoral votes are tracked in half-vote units so that ties stay integral.
inline constexpr int kTotalHalfVotes = 2 * kNumStates;

// State letter for index 0..8 ('A'..'I').
char state_letter(int state);

enum class ValidationCode { BudgetExceeded, NegativeEntry, EntryAbove100, WrongArity };

std::string_view to_string(ValidationCode code);

struct ValidationError {
  ValidationCode code;
  // Offending state index for entry-level errors; nullopt for arity/budget.
  std::optional<int> state;
  // Offending value: the entry, the total (BudgetExceeded) or the arity.
  long long value = 0;

  std::string message() const;
  bool operator==(const ValidationError&) const = default;
};

class InvalidAllocation : public std::runtime_error {
 public:
  explicit InvalidAllocation(ValidationError e)
      : std::runtime_error(e.message()), error_(e) {}
  const ValidationError& error() const { return error_; }

 private:
  ValidationError error_;
};

class Allocation;
using ValidationResult = std::variant<Allocation, ValidationError>;

// Entry checks run first (first offending state wins), then the budget.
ValidationResult validate_allocation(std::span<const long long> raw);
ValidationResult validate_allocation(std::span<const int> raw);

// A pure strategy: nine nonnegative trip counts with total <= 100.
// Only obtainable through validate_allocation / Allocation::from, so every
// instance satisfies the budget invariants.
class Allocation {
 public:
  using Trips = std::array<int, kNumStates>;

  Allocation() = default;  // all zeros

  // Throws InvalidAllocation if `raw` violates any invariant.
  static Allocation from(std::span<const int> raw);
  static Allocation from(std::initializer_list<int> raw);

  int operator[](int state) const { return trips_[static_cast<std::size_t>(state)]; }
  const Trips& trips() const { return trips_; }
  int total() const;

  auto operator<=>(const Allocation&) const = default;

 private:
  explicit Allocation(const Trips& t) : trips_(t) {}
  friend ValidationResult validate_allocation(std::span<const long long> raw);
  Trips trips_{};
};

enum class StateOutcome : std::uint8_t { A, B, Tie };
enum class MatchOutcome : std::uint8_t { WinA, WinB, Tie };

std::string_view to_string(MatchOutcome outcome);

struct MatchResult {
  int half_votes_a = 0;  // 0..18
  int half_votes_b = 0;
  MatchOutcome outcome = MatchOutcome::Tie;
  std::array<StateOutcome, kNumStates> per_state{};

  double votes_a() const { return half_votes_a / 2.0; }
  double votes_b() const { return half_votes_b / 2.0; }

  bool operator==(const MatchResult&) const = default;
};

MatchResult resolve_match(const Allocation& a, const Allocation& b);

// Half-votes won by `a` only; the hot path of the round robin.
inline int half_votes(const Allocation& a, const Allocation& b) {
  int h = 0;
  for (int s = 0; s < kNumStates; ++s) {
    h += (a[s] > b[s]) ? 2 : (a[s] == b[s] ? 1 : 0);
  }
  return h;
}

// "(4,13,3,...)"
std::string to_string(const Allocation& a);

}  // namespace blotto
