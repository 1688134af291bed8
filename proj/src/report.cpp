#include "blotto/report.hpp"

#include <cstdio>
#include <iomanip>

#include "blotto/csv.hpp"

namespace blotto::report {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0" || s.rfind("-0.", 0) == 0) {
    // avoid "-0.0" for values that round to zero
    bool all_zero = true;
    for (char c : s) {
      if (c != '-' && c != '0' && c != '.') all_zero = false;
    }
    if (all_zero) s.erase(0, 1);
  }
  return s;
}

std::string fraction(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::string half_points(long long half) { return format_points(Points(half, 2)); }

nlohmann::json rational_json(const Rational& r) {
  return {{"exact", fraction(r)}, {"value", to_double(r)}};
}

}  // namespace

void write_standings_csv(std::ostream& os, std::span<const StandingsEntry> standings,
                         std::span<const Submission> pool, std::optional<AgentType> only) {
  csv::Row header = {"rank", "submission_id", "agent_type", "model", "points",
                     "W",    "T",             "L",          "leaderboard_points"};
  for (int s = 0; s < kNumStates; ++s) header.emplace_back(1, state_letter(s));
  csv::write_row(os, header);
  for (const auto& e : standings) {
    const auto& sub = pool[e.pool_index];
    if (only && sub.agent_type != *only) continue;
    csv::Row row = {std::to_string(e.rank),
                    e.submission_id,
                    std::string(to_string(sub.agent_type)),
                    sub.model.value_or(""),
                    half_points(e.score_half),
                    std::to_string(e.wins),
                    std::to_string(e.ties),
                    std::to_string(e.losses),
                    format_points(e.leaderboard_points)};
    for (int s = 0; s < kNumStates; ++s) row.push_back(std::to_string(sub.allocation[s]));
    csv::write_row(os, row);
  }
}

nlohmann::json standings_json(std::span<const StandingsEntry> standings,
                              std::span<const Submission> pool) {
  auto arr = nlohmann::json::array();
  for (const auto& e : standings) {
    const auto& sub = pool[e.pool_index];
    std::vector<int> trips(sub.allocation.trips().begin(), sub.allocation.trips().end());
    arr.push_back({{"rank", e.rank},
                   {"submission_id", e.submission_id},
                   {"agent_type", to_string(sub.agent_type)},
                   {"model", sub.model.value_or("")},
                   {"points", e.score()},
                   {"W", e.wins},
                   {"T", e.ties},
                   {"L", e.losses},
                   {"leaderboard_points", to_double(e.leaderboard_points)},
                   {"leaderboard_points_exact", fraction(e.leaderboard_points)},
                   {"allocation", trips}});
  }
  return arr;
}

void write_aggregate_csv(std::ostream& os, std::span<const AggregateEntry> entries) {
  csv::write_row(os, {"rank", "participant_key", "agent_type", "t1", "t2", "t3", "total",
                      "first_submission"});
  for (const auto& e : entries) {
    csv::Row row = {std::to_string(e.final_rank), e.participant_key, e.is_llm ? "llm" : "human"};
    for (const auto& p : e.points_by_tournament) row.push_back(p ? format_points(*p) : "");
    row.push_back(format_points(e.total_points));
    row.push_back(e.first_submission ? e.first_submission->iso8601() : "");
    csv::write_row(os, row);
  }
}

nlohmann::json aggregate_json(std::span<const AggregateEntry> entries) {
  auto arr = nlohmann::json::array();
  for (const auto& e : entries) {
    auto per = nlohmann::json::array();
    for (const auto& p : e.points_by_tournament) {
      per.push_back(p ? nlohmann::json(fraction(*p)) : nlohmann::json(nullptr));
    }
    arr.push_back({{"rank", e.final_rank},
                   {"participant_key", e.participant_key},
                   {"agent_type", e.is_llm ? "llm" : "human"},
                   {"points_by_tournament", per},
                   {"total", rational_json(e.total_points)},
                   {"first_submission", e.first_submission ? e.first_submission->iso8601() : ""}});
  }
  return arr;
}

void write_level_table_csv(std::ostream& os, std::span<const LevelTableRow> rows) {
  csv::write_row(os, {"agent_type", "level", "strong_states", "count", "percent", "score",
                      "score_strict"});
  for (const auto& r : rows) {
    csv::write_row(os, {std::string(to_string(r.agent)), std::string(to_string(r.label)),
                        std::to_string(r.strong_states), std::to_string(r.count),
                        fixed(to_double(r.percent), 1),
                        r.mean_states_per_duel ? fixed(to_double(*r.mean_states_per_duel), 2) : "",
                        r.mean_states_won_strict ? fixed(to_double(*r.mean_states_won_strict), 2)
                                                 : ""});
  }
}

nlohmann::json level_table_json(std::span<const LevelTableRow> rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j = {{"agent_type", to_string(r.agent)},
                        {"level", to_string(r.label)},
                        {"strong_states", r.strong_states},
                        {"count", r.count},
                        {"agent_total", r.agent_total},
                        {"percent", rational_json(r.percent)}};
    j["score"] = r.mean_states_per_duel ? rational_json(*r.mean_states_per_duel) : nlohmann::json();
    j["score_strict"] =
        r.mean_states_won_strict ? rational_json(*r.mean_states_won_strict) : nlohmann::json();
    arr.push_back(std::move(j));
  }
  return arr;
}

void write_digit_table_csv(std::ostream& os,
                           const std::map<AgentType, std::array<Rational, 10>>& digits) {
  csv::Row header = {"digit"};
  for (const auto& [agent, _] : digits) header.emplace_back(to_string(agent));
  csv::write_row(os, header);
  for (int d = 0; d < 10; ++d) {
    csv::Row row = {std::to_string(d)};
    for (const auto& [_, shares] : digits) {
      row.push_back(fixed(to_double(shares[static_cast<std::size_t>(d)]), 1));
    }
    csv::write_row(os, row);
  }
}

nlohmann::json digit_table_json(const std::map<AgentType, std::array<Rational, 10>>& digits) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [agent, shares] : digits) {
    auto arr = nlohmann::json::array();
    for (const auto& s : shares) arr.push_back(rational_json(s));
    j[std::string(to_string(agent))] = std::move(arr);
  }
  return j;
}

void write_survival_csv(std::ostream& os, std::span<const SurvivalCurves> curves) {
  csv::write_row(os, {"agent_type", "state", "t", "share"});
  for (const auto& c : curves) {
    for (int s = 0; s < kNumStates; ++s) {
      for (int t = 0; t <= kSurvivalMaxTrips; ++t) {
        const auto& v = c.share[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
        csv::write_row(os, {std::string(to_string(c.agent)), std::string(1, state_letter(s)),
                            std::to_string(t), fixed(to_double(v), 6)});
      }
    }
  }
}

void write_model_leaderboard_csv(std::ostream& os, const ModelLeaderboard& board) {
  csv::write_row(os, {"model", "avg_points", "instances", "avg_match_points",
                      "avg_leaderboard_points"});
  for (const auto& r : board.rows) {
    const auto& avg = board.basis == PointsBasis::MatchPoints ? r.avg_match_points
                                                              : r.avg_leaderboard_points;
    csv::write_row(os, {r.model, format_decimal(to_double(avg), 3), std::to_string(r.instances),
                        format_decimal(to_double(r.avg_match_points), 3),
                        format_decimal(to_double(r.avg_leaderboard_points), 3)});
  }
}

void write_model_leaderboard_footnote(std::ostream& os, const ModelLeaderboard& board) {
  os << "Average basis: " << to_string(board.basis) << "\n";
  os << "Models without a valid instance: ";
  if (board.omitted.empty()) {
    os << "none";
  } else {
    for (std::size_t i = 0; i < board.omitted.size(); ++i) {
      if (i) os << ", ";
      os << board.omitted[i];
    }
  }
  os << "\n";
}

nlohmann::json model_leaderboard_json(const ModelLeaderboard& board) {
  auto rows = nlohmann::json::array();
  for (const auto& r : board.rows) {
    rows.push_back({{"model", r.model},
                    {"instances", r.instances},
                    {"avg_match_points", rational_json(r.avg_match_points)},
                    {"avg_leaderboard_points", rational_json(r.avg_leaderboard_points)}});
  }
  return {{"basis", to_string(board.basis)}, {"rows", rows}, {"omitted", board.omitted}};
}

void write_regression_text(std::ostream& os, const RegressionFit& fit, const std::string& title) {
  os << title << "\n";
  std::size_t width = 4;
  for (const auto& n : fit.names) width = std::max(width, n.size());
  char line[256];
  std::snprintf(line, sizeof line, "%-*s %12s %12s %9s %9s\n", static_cast<int>(width), "term",
                "estimate", "robust_se", "t", "p");
  os << line;
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const std::string est = fixed(fit.coefficients[k], 3) + RegressionFit::stars(fit.p_values[k]);
    std::snprintf(line, sizeof line, "%-*s %12s %12s %9s %9s\n", static_cast<int>(width),
                  fit.names[i].c_str(), est.c_str(), ("(" + fixed(fit.robust_se[k], 3) + ")").c_str(),
                  fixed(fit.t_values[k], 3).c_str(), fixed(fit.p_values[k], 4).c_str());
    os << line;
  }
  os << "Observations: " << fit.observations << "\n";
  os << "R2: " << fixed(fit.r_squared, 3) << "\n";
  os << "Adjusted R2: " << fixed(fit.adj_r_squared, 3) << "\n";
  os << "Residual Std. Error: " << fixed(fit.residual_se, 3) << " (df = " << fit.df_residual
     << ")\n";
  os << "F Statistic: " << fixed(fit.f_statistic, 3) << "\n";
  os << "F p-value: " << fixed(fit.f_p_value, 4) << "\n";
  os << "Robust standard errors: " << to_string(fit.robust_type) << "\n";
  os << "* p<0.1; ** p<0.05; *** p<0.01\n";
}

void write_regression_csv(std::ostream& os, const RegressionFit& fit) {
  csv::write_row(os, {"term", "estimate", "robust_se", "t", "p", "stars"});
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    csv::write_row(os, {fit.names[i], fixed(fit.coefficients[k], 6), fixed(fit.robust_se[k], 6),
                        fixed(fit.t_values[k], 6), fixed(fit.p_values[k], 6),
                        RegressionFit::stars(fit.p_values[k])});
  }
}

nlohmann::json regression_json(const RegressionFit& fit) {
  auto terms = nlohmann::json::array();
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    terms.push_back({{"term", fit.names[i]},
                     {"estimate", fit.coefficients[k]},
                     {"robust_se", fit.robust_se[k]},
                     {"t", fit.t_values[k]},
                     {"p", fit.p_values[k]},
                     {"stars", RegressionFit::stars(fit.p_values[k])}});
  }
  return {{"terms", terms},
          {"robust", to_string(fit.robust_type)},
          {"observations", fit.observations},
          {"df_residual", fit.df_residual},
          {"r_squared", fit.r_squared},
          {"adj_r_squared", fit.adj_r_squared},
          {"residual_se", fit.residual_se},
          {"f_statistic", fit.f_statistic},
          {"f_p_value", fit.f_p_value}};
}

nlohmann::json exclusions_json(std::span<const ExclusionRecord> records) {
  auto arr = nlohmann::json::array();
  for (const auto& r : records) {
    arr.push_back({{"submission_id", r.submission_id},
                   {"reason", to_string(r.reason)},
                   {"detail", r.detail}});
  }
  return arr;
}

}  // namespace blotto::report
