#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "blotto/analysis.hpp"
#include "blotto/ingestion.hpp"
#include "blotto/regression.hpp"
#include "blotto/tournament.hpp"

namespace blotto::report {

// "%.{decimals}f" without trimming, e.g. fixed(54.55, 1) == "54.6".
std::string fixed(double v, int decimals);
// "n/d", or "n" for integers.
std::string fraction(const Rational& r);

// rank,submission_id,agent_type,model,points,W,T,L,leaderboard_points,A..I
// Rows follow `standings` order. With `only`, other agent types are skipped
// (ranks stay those of the full tournament).
void write_standings_csv(std::ostream& os, std::span<const StandingsEntry> standings,
                         std::span<const Submission> pool,
                         std::optional<AgentType> only = std::nullopt);
nlohmann::json standings_json(std::span<const StandingsEntry> standings,
                              std::span<const Submission> pool);

// rank,participant_key,agent_type,t1,t2,t3,total,first_submission
void write_aggregate_csv(std::ostream& os, std::span<const AggregateEntry> entries);
nlohmann::json aggregate_json(std::span<const AggregateEntry> entries);

// agent_type,level,strong_states,count,percent,score,score_strict
void write_level_table_csv(std::ostream& os, std::span<const LevelTableRow> rows);
nlohmann::json level_table_json(std::span<const LevelTableRow> rows);

// digit,<agent>,... one column per agent type present
void write_digit_table_csv(std::ostream& os,
                           const std::map<AgentType, std::array<Rational, 10>>& digits);
nlohmann::json digit_table_json(const std::map<AgentType, std::array<Rational, 10>>& digits);

// Long format: agent_type,state,t,share
void write_survival_csv(std::ostream& os, std::span<const SurvivalCurves> curves);

// model,avg_points,instances,avg_match_points,avg_leaderboard_points
void write_model_leaderboard_csv(std::ostream& os, const ModelLeaderboard& board);
// One line naming models with no valid instance ("none" when all appear).
void write_model_leaderboard_footnote(std::ostream& os, const ModelLeaderboard& board);
nlohmann::json model_leaderboard_json(const ModelLeaderboard& board);

// Human-readable coefficient table with robust SEs and stars, then fit statistics.
void write_regression_text(std::ostream& os, const RegressionFit& fit, const std::string& title);
// term,estimate,robust_se,t,p,stars
void write_regression_csv(std::ostream& os, const RegressionFit& fit);
nlohmann::json regression_json(const RegressionFit& fit);

nlohmann::json exclusions_json(std::span<const ExclusionRecord> records);

}  // namespace blotto::report
