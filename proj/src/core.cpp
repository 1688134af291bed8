#include "blotto/core.hpp"

#include <numeric>
#include <vector>

namespace blotto {

char state_letter(int state) { return static_cast<char>('A' + state); }

std::string_view to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::BudgetExceeded: return "BudgetExceeded";
    case ValidationCode::NegativeEntry: return "NegativeEntry";
    case ValidationCode::EntryAbove100: return "EntryAbove100";
    case ValidationCode::WrongArity: return "WrongArity";
  }
  return "Unknown";
}

std::string ValidationError::message() const {
  std::string out(to_string(code));
  switch (code) {
    case ValidationCode::WrongArity:
      out += ": expected 9 entries, got " + std::to_string(value);
      break;
    case ValidationCode::BudgetExceeded:
      out += ": total " + std::to_string(value) + " exceeds 100";
      break;
    default:
      out += ": state ";
      out += state_letter(state.value_or(0));
      out += " = " + std::to_string(value);
      break;
  }
  return out;
}

ValidationResult validate_allocation(std::span<const long long> raw) {
  if (raw.size() != kNumStates) {
    return ValidationError{ValidationCode::WrongArity, std::nullopt,
                           static_cast<long long>(raw.size())};
  }
  Allocation::Trips trips{};
  long long total = 0;
  for (int s = 0; s < kNumStates; ++s) {
    const long long v = raw[static_cast<std::size_t>(s)];
    if (v < 0) return ValidationError{ValidationCode::NegativeEntry, s, v};
    if (v > kBudget) return ValidationError{ValidationCode::EntryAbove100, s, v};
    trips[static_cast<std::size_t>(s)] = static_cast<int>(v);
    total += v;
  }
  if (total > kBudget) {
    return ValidationError{ValidationCode::BudgetExceeded, std::nullopt, total};
  }
  return Allocation(trips);
}

ValidationResult validate_allocation(std::span<const int> raw) {
  std::vector<long long> wide(raw.begin(), raw.end());
  return validate_allocation(std::span<const long long>(wide));
}

Allocation Allocation::from(std::span<const int> raw) {
  auto r = validate_allocation(raw);
  if (auto* err = std::get_if<ValidationError>(&r)) throw InvalidAllocation(*err);
  return std::get<Allocation>(r);
}

Allocation Allocation::from(std::initializer_list<int> raw) {
  return from(std::span<const int>(raw.begin(), raw.size()));
}

int Allocation::total() const { return std::accumulate(trips_.begin(), trips_.end(), 0); }

std::string_view to_string(MatchOutcome outcome) {
  switch (outcome) {
    case MatchOutcome::WinA: return "WinA";
    case MatchOutcome::WinB: return "WinB";
    case MatchOutcome::Tie: return "Tie";
  }
  return "Unknown";
}

MatchResult resolve_match(const Allocation& a, const Allocation& b) {
  MatchResult r;
  for (int s = 0; s < kNumStates; ++s) {
    auto& out = r.per_state[static_cast<std::size_t>(s)];
    if (a[s] > b[s]) {
      out = StateOutcome::A;
      r.half_votes_a += 2;
    } else if (a[s] < b[s]) {
      out = StateOutcome::B;
      r.half_votes_b += 2;
    } else {
      out = StateOutcome::Tie;
      r.half_votes_a += 1;
      r.half_votes_b += 1;
    }
  }
  if (r.half_votes_a > r.half_votes_b) {
    r.outcome = MatchOutcome::WinA;
  } else if (r.half_votes_a < r.half_votes_b) {
    r.outcome = MatchOutcome::WinB;
  } else {
    r.outcome = MatchOutcome::Tie;
  }
  return r;
}

std::string to_string(const Allocation& a) {
  std::string out = "(";
  for (int s = 0; s < kNumStates; ++s) {
    if (s) out += ',';
    out += std::to_string(a[s]);
  }
  out += ')';
  return out;
}

}  // namespace blotto
