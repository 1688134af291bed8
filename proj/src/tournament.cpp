#include "blotto/tournament.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>
#include <unordered_set>

namespace blotto {

std::optional<Tournament> tournament_from_int(long long n) {
  if (n < 1 || n > 3) return std::nullopt;
  return static_cast<Tournament>(n);
}

std::string_view to_string(AgentType t) { return t == AgentType::LLM ? "llm" : "human"; }

std::optional<AgentType> agent_type_from_string(std::string_view s) {
  if (s == "human" || s == "Human" || s == "HUMAN") return AgentType::Human;
  if (s == "llm" || s == "LLM" || s == "Llm") return AgentType::LLM;
  return std::nullopt;
}

namespace {

struct Tally {
  std::vector<int> wins, ties, losses;
  std::vector<long long> states_half, states_strict;

  explicit Tally(std::size_t n)
      : wins(n), ties(n), losses(n), states_half(n), states_strict(n) {}

  void add(const Tally& o) {
    for (std::size_t i = 0; i < wins.size(); ++i) {
      wins[i] += o.wins[i];
      ties[i] += o.ties[i];
      losses[i] += o.losses[i];
      states_half[i] += o.states_half[i];
      states_strict[i] += o.states_strict[i];
    }
  }
};

void play_rows(std::span<const Submission> pool, std::size_t first, std::size_t stride,
               Tally& t) {
  const std::size_t n = pool.size();
  for (std::size_t i = first; i < n; i += stride) {
    const Allocation& a = pool[i].allocation;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Allocation& b = pool[j].allocation;
      int won_a = 0, won_b = 0;
      for (int s = 0; s < kNumStates; ++s) {
        won_a += a[s] > b[s];
        won_b += a[s] < b[s];
      }
      const int tied = kNumStates - won_a - won_b;
      const int ha = 2 * won_a + tied;
      const int hb = 2 * won_b + tied;
      t.states_half[i] += ha;
      t.states_half[j] += hb;
      t.states_strict[i] += won_a;
      t.states_strict[j] += won_b;
      if (ha > hb) {
        ++t.wins[i];
        ++t.losses[j];
      } else if (ha < hb) {
        ++t.losses[i];
        ++t.wins[j];
      } else {
        ++t.ties[i];
        ++t.ties[j];
      }
    }
  }
}

}  // namespace

std::vector<RoundRobinRecord> run_round_robin(std::span<const Submission> pool, int jobs) {
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& s : pool) {
      if (!seen.insert(s.submission_id).second) {
        throw TournamentError(TournamentError::Code::DuplicateSubmissionId,
                              "DuplicateSubmissionId: " + s.submission_id);
      }
    }
  }

  const std::size_t n = pool.size();
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(n, 1));

  Tally total(n);
  if (workers == 1) {
    play_rows(pool, 0, 1, total);
  } else {
    std::vector<Tally> partial(workers, Tally(n));
    {
      std::vector<std::jthread> threads;
      threads.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] { play_rows(pool, w, workers, partial[w]); });
      }
    }
    for (const auto& p : partial) total.add(p);
  }

  std::vector<RoundRobinRecord> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = out[i];
    r.submission_id = pool[i].submission_id;
    r.wins = total.wins[i];
    r.ties = total.ties[i];
    r.losses = total.losses[i];
    r.score_half = 2LL * r.wins + r.ties;
    r.states_half = total.states_half[i];
    r.states_strict = total.states_strict[i];
  }
  return out;
}

std::vector<StandingsEntry> rank_standings(std::span<const RoundRobinRecord> scores,
                                           std::span<const Submission> pool) {
  if (scores.size() != pool.size()) {
    throw TournamentError(TournamentError::Code::ScoreMismatch,
                          "ScoreMismatch: one score tuple per submission is required");
  }
  std::vector<StandingsEntry> entries;
  entries.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (scores[i].submission_id != pool[i].submission_id) {
      throw TournamentError(TournamentError::Code::ScoreMismatch,
                            "ScoreMismatch: score for " + scores[i].submission_id +
                                " is not aligned with submission " + pool[i].submission_id);
    }
    if (!pool[i].timestamp) {
      throw TournamentError(TournamentError::Code::MissingTimestamp,
                            "MissingTimestamp: " + pool[i].submission_id);
    }
    StandingsEntry e;
    e.pool_index = i;
    e.submission_id = pool[i].submission_id;
    e.wins = scores[i].wins;
    e.ties = scores[i].ties;
    e.losses = scores[i].losses;
    e.score_half = scores[i].score_half;
    e.states_half = scores[i].states_half;
    e.states_strict = scores[i].states_strict;
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [&](const StandingsEntry& a, const StandingsEntry& b) {
    if (a.score_half != b.score_half) return a.score_half > b.score_half;
    const auto& ta = *pool[a.pool_index].timestamp;
    const auto& tb = *pool[b.pool_index].timestamp;
    if (ta != tb) return ta < tb;
    return a.submission_id < b.submission_id;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = static_cast<int>(i) + 1;
  return entries;
}

long long rank_points(int rank) {
  static constexpr long long kTop[] = {200, 180, 165, 150, 140, 130, 120, 110, 100};
  if (rank >= 1 && rank <= 9) return kTop[rank - 1];
  if (rank >= 10 && rank <= 100) return 101 - rank;
  return 0;
}

std::map<std::string, Points> assign_leaderboard_points(std::span<const StandingsEntry> entries) {
  std::vector<const StandingsEntry*> by_rank;
  by_rank.reserve(entries.size());
  for (const auto& e : entries) by_rank.push_back(&e);
  std::sort(by_rank.begin(), by_rank.end(),
            [](const StandingsEntry* a, const StandingsEntry* b) { return a->rank < b->rank; });

  std::map<std::string, Points> points;
  std::size_t i = 0;
  while (i < by_rank.size()) {
    std::size_t j = i;
    while (j < by_rank.size() && by_rank[j]->score_half == by_rank[i]->score_half) ++j;
    long long sum = 0;
    for (std::size_t k = i; k < j; ++k) sum += rank_points(by_rank[k]->rank);
    const Points share(sum, static_cast<long long>(j - i));
    for (std::size_t k = i; k < j; ++k) points[by_rank[k]->submission_id] = share;
    i = j;
  }
  return points;
}

std::vector<StandingsEntry> build_standings(std::span<const RoundRobinRecord> scores,
                                            std::span<const Submission> pool) {
  auto entries = rank_standings(scores, pool);
  const auto points = assign_leaderboard_points(entries);
  for (auto& e : entries) e.leaderboard_points = points.at(e.submission_id);
  return entries;
}

std::vector<AggregateEntry> aggregate_leaderboard(
    const std::array<std::map<std::string, Points>, 3>& per_tournament,
    std::span<const Submission> submissions) {
  std::map<std::string, AggregateEntry> by_key;
  for (int t = 0; t < 3; ++t) {
    for (const auto& [key, pts] : per_tournament[static_cast<std::size_t>(t)]) {
      auto& e = by_key[key];
      e.participant_key = key;
      e.points_by_tournament[static_cast<std::size_t>(t)] = pts;
      e.total_points += pts;
    }
  }
  for (const auto& s : submissions) {
    auto it = by_key.find(aggregate_key(s));
    if (it == by_key.end()) continue;
    auto& e = it->second;
    if (s.agent_type == AgentType::LLM) e.is_llm = true;
    if (s.timestamp && (!e.first_submission || *s.timestamp < *e.first_submission)) {
      e.first_submission = s.timestamp;
    }
  }

  std::vector<AggregateEntry> out;
  out.reserve(by_key.size());
  for (auto& [_, e] : by_key) out.push_back(std::move(e));
  std::sort(out.begin(), out.end(), [](const AggregateEntry& a, const AggregateEntry& b) {
    if (a.total_points != b.total_points) return a.total_points > b.total_points;
    if (a.first_submission != b.first_submission) {
      if (!a.first_submission) return false;
      if (!b.first_submission) return true;
      return *a.first_submission < *b.first_submission;
    }
    return a.participant_key < b.participant_key;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].final_rank = static_cast<int>(i) + 1;
  return out;
}

double to_double(const Points& p) {
  return static_cast<double>(p.numerator()) / static_cast<double>(p.denominator());
}

std::string format_points(const Points& p, int max_decimals) {
  if (p.denominator() == 1) return std::to_string(p.numerator());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", max_decimals, to_double(p));
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace blotto
