#include <gtest/gtest.h>

#include <vector>

#include "blotto/core.hpp"
#include "blotto/rng.hpp"

using namespace blotto;

namespace {

Allocation random_allocation(Rng& rng) {
  // Spend a random budget in 0..100 one trip at a time.
  std::vector<int> v(kNumStates, 0);
  const int spend = static_cast<int>(rng.below(kBudget + 1));
  for (int i = 0; i < spend; ++i) ++v[rng.below(kNumStates)];
  return Allocation::from(v);
}

}  // namespace

TEST(Validate, AcceptsBoundaryAllocations) {
  const std::vector<int> full = {100, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_TRUE(std::holds_alternative<Allocation>(validate_allocation(std::span<const int>(full))));
  const std::vector<int> zero(9, 0);
  EXPECT_TRUE(std::holds_alternative<Allocation>(validate_allocation(std::span<const int>(zero))));
  const std::vector<int> spread = {12, 11, 11, 11, 11, 11, 11, 11, 11};
  EXPECT_TRUE(std::holds_alternative<Allocation>(validate_allocation(std::span<const int>(spread))));
}

TEST(Validate, BudgetExceeded) {
  const std::vector<int> v = {12, 12, 12, 12, 12, 12, 12, 12, 5};  // 101
  auto r = validate_allocation(std::span<const int>(v));
  ASSERT_TRUE(std::holds_alternative<ValidationError>(r));
  const auto& e = std::get<ValidationError>(r);
  EXPECT_EQ(e.code, ValidationCode::BudgetExceeded);
  EXPECT_EQ(e.value, 101);
  EXPECT_FALSE(e.state.has_value());
}

TEST(Validate, NegativeEntryNamesState) {
  const std::vector<int> v = {10, 10, -1, 10, 10, 10, 10, 10, 10};
  auto r = validate_allocation(std::span<const int>(v));
  ASSERT_TRUE(std::holds_alternative<ValidationError>(r));
  const auto& e = std::get<ValidationError>(r);
  EXPECT_EQ(e.code, ValidationCode::NegativeEntry);
  EXPECT_EQ(e.state, 2);
  EXPECT_EQ(e.value, -1);
}

TEST(Validate, EntryAboveHundredBeatsBudget) {
  const std::vector<long long> v = {0, 0, 0, 0, 0, 0, 0, 0, 101};
  auto r = validate_allocation(std::span<const long long>(v));
  ASSERT_TRUE(std::holds_alternative<ValidationError>(r));
  EXPECT_EQ(std::get<ValidationError>(r).code, ValidationCode::EntryAbove100);
  EXPECT_EQ(std::get<ValidationError>(r).state, 8);
}

TEST(Validate, WrongArity) {
  const std::vector<int> v = {50, 50, 0, 0, 0, 0, 0, 0};
  auto r = validate_allocation(std::span<const int>(v));
  ASSERT_TRUE(std::holds_alternative<ValidationError>(r));
  EXPECT_EQ(std::get<ValidationError>(r).code, ValidationCode::WrongArity);
  EXPECT_EQ(std::get<ValidationError>(r).value, 8);
}

TEST(Validate, FromThrows) {
  EXPECT_THROW(Allocation::from({60, 41, 0, 0, 0, 0, 0, 0, 0}), InvalidAllocation);
  try {
    Allocation::from({60, 41, 0, 0, 0, 0, 0, 0, 0});
  } catch (const InvalidAllocation& e) {
    EXPECT_EQ(e.error().code, ValidationCode::BudgetExceeded);
  }
}

TEST(Match, WorkedExample) {
  const auto a = Allocation::from({4, 13, 3, 17, 21, 3, 21, 5, 13});
  const auto b = Allocation::from({3, 16, 3, 17, 22, 17, 3, 16, 3});
  const auto r = resolve_match(a, b);
  EXPECT_EQ(r.half_votes_a, 8);
  EXPECT_EQ(r.half_votes_b, 10);
  EXPECT_DOUBLE_EQ(r.votes_a(), 4.0);
  EXPECT_DOUBLE_EQ(r.votes_b(), 5.0);
  EXPECT_EQ(r.outcome, MatchOutcome::WinB);
  const std::array<StateOutcome, 9> expected = {
      StateOutcome::A,   StateOutcome::B, StateOutcome::Tie, StateOutcome::Tie, StateOutcome::B,
      StateOutcome::B,   StateOutcome::A, StateOutcome::B,   StateOutcome::A};
  EXPECT_EQ(r.per_state, expected);
}

TEST(Match, IdenticalAllocationsTie) {
  const auto a = Allocation::from({12, 11, 11, 11, 11, 11, 11, 11, 11});
  const auto r = resolve_match(a, a);
  EXPECT_EQ(r.half_votes_a, 9);
  EXPECT_EQ(r.half_votes_b, 9);
  EXPECT_EQ(r.outcome, MatchOutcome::Tie);
}

TEST(Match, ZeroVsOneEverywhere) {
  const Allocation zero;
  const auto ones = Allocation::from({1, 1, 1, 1, 1, 1, 1, 1, 1});
  const auto r = resolve_match(ones, zero);
  EXPECT_EQ(r.half_votes_a, 18);
  EXPECT_EQ(r.outcome, MatchOutcome::WinA);
}

TEST(Match, SymmetricAndConservative) {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_allocation(rng);
    const auto b = random_allocation(rng);
    const auto ab = resolve_match(a, b);
    const auto ba = resolve_match(b, a);
    ASSERT_EQ(ab.half_votes_a + ab.half_votes_b, 18);
    ASSERT_EQ(ab.half_votes_a, ba.half_votes_b);
    ASSERT_EQ(ab.half_votes_a, half_votes(a, b));
    if (ab.outcome == MatchOutcome::WinA) ASSERT_EQ(ba.outcome, MatchOutcome::WinB);
    if (ab.outcome == MatchOutcome::Tie) ASSERT_EQ(ba.outcome, MatchOutcome::Tie);
  }
}

TEST(Match, ToString) {
  EXPECT_EQ(to_string(Allocation::from({4, 13, 3, 17, 21, 3, 21, 5, 13})),
            "(4,13,3,17,21,3,21,5,13)");
  EXPECT_EQ(state_letter(0), 'A');
  EXPECT_EQ(state_letter(8), 'I');
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next(), b.next());
  // The 10000th output for the default seed is fixed by the C++ standard.
  Rng d(5489u);
  for (int i = 0; i < 9999; ++i) d.next();
  EXPECT_EQ(d.next(), 9981545732273789042ull);
}

TEST(RngTest, BelowStaysInRange) {
  Rng r(1);
  std::array<int, 7> hits{};
  for (int i = 0; i < 7000; ++i) {
    const auto x = r.below(7);
    ASSERT_LT(x, 7u);
    ++hits[x];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}
