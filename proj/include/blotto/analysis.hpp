#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "blotto/submission.hpp"
#include "blotto/tournament.hpp"

namespace blotto {

using Rational = boost::rational<long long>;

// ---------------------------------------------------------------------------
// Reasoning levels
//
// The level of a strategy is read off the number of "strong" states (more
// than 11 trips): 1 -> Level 0 (near-uniform), 8 -> Level 1, 7 -> Level 2,
// 6 -> Level 3, 5 -> Level 4, and 4/3/2 -> Level 5+. Zero strong states (and
// the infeasible nine) have no level.

inline constexpr int kStrongThreshold = 11;

enum class LevelLabel { L0, L1, L2, L3, L4, L5plus4, L5plus3, L5plus2, Unclassified };

inline constexpr std::array<LevelLabel, 8> kClassifiedLevels = {
    LevelLabel::L0,      LevelLabel::L1,      LevelLabel::L2,      LevelLabel::L3,
    LevelLabel::L4,      LevelLabel::L5plus4, LevelLabel::L5plus3, LevelLabel::L5plus2};

struct ReasoningLevel {
  int strong_states = 0;
  LevelLabel label = LevelLabel::Unclassified;

  bool operator==(const ReasoningLevel&) const = default;
};

std::string_view to_string(LevelLabel label);  // "Level 0", "Level 5+", "Unclassified"
LevelLabel label_for_strong_states(int strong_states);
int strong_states_for(LevelLabel label);  // 0 for Unclassified

ReasoningLevel classify_reasoning_level(const Allocation& a);

// Regression grouping: 1..4 for Levels 1..4, 5 for every Level 5+ bucket and
// 0 (the reference group) for Level 0 and Unclassified.
int regression_level(LevelLabel label);

// ---------------------------------------------------------------------------
// Level distribution

struct LevelTableRow {
  LevelLabel label = LevelLabel::Unclassified;
  int strong_states = 0;
  AgentType agent = AgentType::Human;
  long long count = 0;
  long long agent_total = 0;
  Rational percent{0};
  // Average electoral votes per duel (ties count 0.5); absent for empty cells.
  std::optional<Rational> mean_states_per_duel;
  // Same, counting only states won outright.
  std::optional<Rational> mean_states_won_strict;
};

// One row per (agent type present in the pool, level); the eight classified
// levels always appear, Unclassified only when populated. `records` must be
// aligned with `pool`.
std::vector<LevelTableRow> level_distribution_table(std::span<const Submission> pool,
                                                    std::span<const RoundRobinRecord> records);

// ---------------------------------------------------------------------------
// Unit digits and survival

// Percent of state-level entries ending in each digit, per agent type present.
std::map<AgentType, std::array<Rational, 10>> unit_digit_distribution(
    std::span<const Submission> pool);

inline constexpr int kSurvivalMaxTrips = kBudget;

struct SurvivalCurves {
  AgentType agent = AgentType::Human;
  long long count = 0;
  // share[state][t] = fraction of strategies with at least t trips in state.
  std::array<std::array<Rational, kSurvivalMaxTrips + 1>, kNumStates> share{};
};

// nullopt when the pool has no strategy of `agent`.
std::optional<SurvivalCurves> survival_curve(std::span<const Submission> pool, AgentType agent);

// ---------------------------------------------------------------------------
// Model leaderboard

enum class PointsBasis { MatchPoints, LeaderboardPoints };
std::string_view to_string(PointsBasis b);

struct ModelRow {
  std::string model;
  Rational avg_match_points{0};
  Rational avg_leaderboard_points{0};
  int instances = 0;
};

struct ModelLeaderboard {
  PointsBasis basis = PointsBasis::MatchPoints;
  std::vector<ModelRow> rows;        // sorted by the basis, descending
  std::vector<std::string> omitted;  // requested models with no valid instance
};

// Averages per model over the LLM entries of one tournament's standings.
// Both averages are always computed; `basis` only picks the sort key.
ModelLeaderboard model_leaderboard(std::span<const StandingsEntry> standings,
                                   std::span<const Submission> pool,
                                   std::span<const std::string> requested_models = {},
                                   PointsBasis basis = PointsBasis::MatchPoints);

// "294.056", "290.5", "191": up to three decimals, trailing zeros trimmed.
std::string format_decimal(double v, int decimals = 3);

}  // namespace blotto
