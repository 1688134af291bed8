#include "blotto/analysis.hpp"

#include <algorithm>
#include <cstdio>

namespace blotto {

std::string_view to_string(LevelLabel label) {
  switch (label) {
    case LevelLabel::L0: return "Level 0";
    case LevelLabel::L1: return "Level 1";
    case LevelLabel::L2: return "Level 2";
    case LevelLabel::L3: return "Level 3";
    case LevelLabel::L4: return "Level 4";
    case LevelLabel::L5plus4:
    case LevelLabel::L5plus3:
    case LevelLabel::L5plus2: return "Level 5+";
    case LevelLabel::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

LevelLabel label_for_strong_states(int strong_states) {
  switch (strong_states) {
    case 1: return LevelLabel::L0;
    case 8: return LevelLabel::L1;
    case 7: return LevelLabel::L2;
    case 6: return LevelLabel::L3;
    case 5: return LevelLabel::L4;
    case 4: return LevelLabel::L5plus4;
    case 3: return LevelLabel::L5plus3;
    case 2: return LevelLabel::L5plus2;
    default: return LevelLabel::Unclassified;
  }
}

int strong_states_for(LevelLabel label) {
  switch (label) {
    case LevelLabel::L0: return 1;
    case LevelLabel::L1: return 8;
    case LevelLabel::L2: return 7;
    case LevelLabel::L3: return 6;
    case LevelLabel::L4: return 5;
    case LevelLabel::L5plus4: return 4;
    case LevelLabel::L5plus3: return 3;
    case LevelLabel::L5plus2: return 2;
    case LevelLabel::Unclassified: return 0;
  }
  return 0;
}

ReasoningLevel classify_reasoning_level(const Allocation& a) {
  const auto& t = a.trips();
  const int strong = static_cast<int>(
      std::count_if(t.begin(), t.end(), [](int v) { return v > kStrongThreshold; }));
  return {strong, label_for_strong_states(strong)};
}

int regression_level(LevelLabel label) {
  switch (label) {
    case LevelLabel::L1: return 1;
    case LevelLabel::L2: return 2;
    case LevelLabel::L3: return 3;
    case LevelLabel::L4: return 4;
    case LevelLabel::L5plus4:
    case LevelLabel::L5plus3:
    case LevelLabel::L5plus2: return 5;
    default: return 0;
  }
}

namespace {

std::vector<AgentType> agents_present(std::span<const Submission> pool) {
  std::vector<AgentType> out;
  for (AgentType a : {AgentType::Human, AgentType::LLM}) {
    if (std::any_of(pool.begin(), pool.end(), [a](const Submission& s) { return s.agent_type == a; })) {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

std::vector<LevelTableRow> level_distribution_table(std::span<const Submission> pool,
                                                    std::span<const RoundRobinRecord> records) {
  if (records.size() != pool.size()) {
    throw std::invalid_argument("level_distribution_table: records not aligned with pool");
  }
  const long long duels = static_cast<long long>(pool.size()) - 1;

  struct Cell {
    long long count = 0;
    long long states_half = 0;
    long long states_strict = 0;
  };
  // [agent][label]
  std::map<std::pair<AgentType, LevelLabel>, Cell> cells;
  std::map<AgentType, long long> totals;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto label = classify_reasoning_level(pool[i].allocation).label;
    auto& c = cells[{pool[i].agent_type, label}];
    ++c.count;
    c.states_half += records[i].states_half;
    c.states_strict += records[i].states_strict;
    ++totals[pool[i].agent_type];
  }

  std::vector<LevelTableRow> rows;
  for (AgentType agent : agents_present(pool)) {
    auto emit = [&](LevelLabel label) {
      LevelTableRow r;
      r.label = label;
      r.strong_states = strong_states_for(label);
      r.agent = agent;
      r.agent_total = totals[agent];
      auto it = cells.find({agent, label});
      if (it != cells.end()) {
        r.count = it->second.count;
        if (duels > 0) {
          r.mean_states_per_duel = Rational(it->second.states_half, 2 * duels * r.count);
          r.mean_states_won_strict = Rational(it->second.states_strict, duels * r.count);
        }
      }
      r.percent = Rational(100 * r.count, r.agent_total);
      rows.push_back(r);
    };
    for (LevelLabel label : kClassifiedLevels) emit(label);
    if (cells.contains({agent, LevelLabel::Unclassified})) emit(LevelLabel::Unclassified);
  }
  return rows;
}

std::map<AgentType, std::array<Rational, 10>> unit_digit_distribution(
    std::span<const Submission> pool) {
  std::map<AgentType, std::array<long long, 10>> counts;
  for (const auto& s : pool) {
    auto& c = counts[s.agent_type];
    for (int v : s.allocation.trips()) ++c[static_cast<std::size_t>(v % 10)];
  }
  std::map<AgentType, std::array<Rational, 10>> out;
  for (const auto& [agent, c] : counts) {
    long long total = 0;
    for (long long n : c) total += n;
    auto& pct = out[agent];
    for (std::size_t d = 0; d < 10; ++d) pct[d] = Rational(100 * c[d], total);
  }
  return out;
}

std::optional<SurvivalCurves> survival_curve(std::span<const Submission> pool, AgentType agent) {
  SurvivalCurves out;
  out.agent = agent;
  // at_least[state][t] built from a histogram by suffix sums.
  std::array<std::array<long long, kSurvivalMaxTrips + 2>, kNumStates> hist{};
  for (const auto& s : pool) {
    if (s.agent_type != agent) continue;
    ++out.count;
    for (int st = 0; st < kNumStates; ++st) {
      ++hist[static_cast<std::size_t>(st)][static_cast<std::size_t>(s.allocation[st])];
    }
  }
  if (out.count == 0) return std::nullopt;
  for (std::size_t st = 0; st < kNumStates; ++st) {
    long long at_least = 0;
    for (int t = kSurvivalMaxTrips; t >= 0; --t) {
      at_least += hist[st][static_cast<std::size_t>(t)];
      out.share[st][static_cast<std::size_t>(t)] = Rational(at_least, out.count);
    }
  }
  return out;
}

std::string_view to_string(PointsBasis b) {
  return b == PointsBasis::MatchPoints ? "match_points" : "leaderboard_points";
}

ModelLeaderboard model_leaderboard(std::span<const StandingsEntry> standings,
                                   std::span<const Submission> pool,
                                   std::span<const std::string> requested_models,
                                   PointsBasis basis) {
  struct Sum {
    Rational match{0};
    Rational board{0};
    int n = 0;
  };
  std::map<std::string, Sum> sums;
  for (const auto& e : standings) {
    const auto& sub = pool[e.pool_index];
    if (sub.agent_type != AgentType::LLM || !sub.model) continue;
    auto& s = sums[*sub.model];
    s.match += Rational(e.score_half, 2);
    s.board += e.leaderboard_points;
    ++s.n;
  }

  ModelLeaderboard out;
  out.basis = basis;
  for (const auto& [model, s] : sums) {
    out.rows.push_back({model, s.match / s.n, s.board / s.n, s.n});
  }
  std::sort(out.rows.begin(), out.rows.end(), [basis](const ModelRow& a, const ModelRow& b) {
    const auto& ka = basis == PointsBasis::MatchPoints ? a.avg_match_points : a.avg_leaderboard_points;
    const auto& kb = basis == PointsBasis::MatchPoints ? b.avg_match_points : b.avg_leaderboard_points;
    if (ka != kb) return ka > kb;
    return a.model < b.model;
  });
  for (const auto& m : requested_models) {
    if (!sums.contains(m) &&
        std::find(out.omitted.begin(), out.omitted.end(), m) == out.omitted.end()) {
      out.omitted.push_back(m);
    }
  }
  return out;
}

std::string format_decimal(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

}  // namespace blotto
