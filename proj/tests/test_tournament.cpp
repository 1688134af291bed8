#include <gtest/gtest.h>

#include <numeric>

#include "blotto/rng.hpp"
#include "blotto/tournament.hpp"

using namespace blotto;

namespace {

Submission make_sub(const std::string& id, const Allocation& a, long long minute = 0,
                    AgentType agent = AgentType::Human, Tournament t = Tournament::T1,
                    std::string participant = {}) {
  Submission s;
  s.submission_id = id;
  s.participant_id = participant.empty() ? id : participant;
  s.tournament = t;
  s.agent_type = agent;
  if (agent == AgentType::LLM) s.model = "m";
  s.timestamp = Timestamp::from_millis(1'700'000'000'000LL + minute * 60'000);
  s.allocation = a;
  return s;
}

std::vector<Submission> random_pool(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Submission> pool;
  for (int i = 0; i < n; ++i) {
    std::vector<int> v(9, 0);
    for (int k = 0; k < 100; ++k) ++v[rng.below(9)];
    pool.push_back(make_sub("s" + std::to_string(i), Allocation::from(v), i));
  }
  return pool;
}

// Record with a given score; W/T/L are irrelevant to ranking and points.
RoundRobinRecord scored(const std::string& id, long long score_half) {
  RoundRobinRecord r;
  r.submission_id = id;
  r.score_half = score_half;
  return r;
}

}  // namespace

TEST(RoundRobin, MatchesPairwiseOracle) {
  const auto pool = random_pool(40, 3);
  const auto rec = run_round_robin(pool);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    int w = 0, t = 0, l = 0;
    long long states = 0;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (i == j) continue;
      // Independent comparison: count states each side wins.
      int mine = 0, theirs = 0;
      for (int s = 0; s < 9; ++s) {
        if (pool[i].allocation[s] > pool[j].allocation[s]) ++mine;
        if (pool[i].allocation[s] < pool[j].allocation[s]) ++theirs;
      }
      states += 2 * mine + (9 - mine - theirs);
      if (mine > theirs) ++w;
      else if (mine < theirs) ++l;
      else ++t;
    }
    EXPECT_EQ(rec[i].wins, w);
    EXPECT_EQ(rec[i].ties, t);
    EXPECT_EQ(rec[i].losses, l);
    EXPECT_EQ(rec[i].states_half, states);
    EXPECT_EQ(rec[i].score_half, 2 * w + t);
  }
}

TEST(RoundRobin, ConservationOfScore) {
  for (int n : {2, 3, 10, 207}) {
    const auto pool = random_pool(n, static_cast<std::uint64_t>(n));
    const auto rec = run_round_robin(pool, 3);
    long long total = 0;
    for (const auto& r : rec) {
      total += r.score_half;
      EXPECT_EQ(r.wins + r.ties + r.losses, n - 1);
    }
    EXPECT_EQ(total, static_cast<long long>(n) * (n - 1));  // half-points: 2 * N(N-1)/2
  }
}

TEST(RoundRobin, ThreadCountDoesNotMatter) {
  const auto pool = random_pool(101, 11);
  const auto one = run_round_robin(pool, 1);
  for (int jobs : {2, 3, 8}) EXPECT_EQ(run_round_robin(pool, jobs), one);
}

TEST(RoundRobin, DuplicateIdsRejected) {
  auto pool = random_pool(3, 1);
  pool[2].submission_id = pool[0].submission_id;
  try {
    run_round_robin(pool);
    FAIL();
  } catch (const TournamentError& e) {
    EXPECT_EQ(e.code(), TournamentError::Code::DuplicateSubmissionId);
  }
}

TEST(Ranking, TieBreakByTimestampThenId) {
  const Allocation a;
  std::vector<Submission> pool = {make_sub("late", a, 5), make_sub("early", a, 1),
                                  make_sub("b", a, 3), make_sub("a", a, 3),
                                  make_sub("best", a, 9)};
  std::vector<RoundRobinRecord> scores = {scored("late", 4), scored("early", 4), scored("b", 4),
                                          scored("a", 4), scored("best", 6)};
  const auto st = rank_standings(scores, pool);
  std::vector<std::string> order;
  for (const auto& e : st) order.push_back(e.submission_id);
  EXPECT_EQ(order, (std::vector<std::string>{"best", "early", "a", "b", "late"}));
  EXPECT_EQ(st[0].rank, 1);
  EXPECT_EQ(st[4].rank, 5);
}

TEST(Ranking, MissingTimestamp) {
  auto pool = random_pool(2, 1);
  pool[1].timestamp.reset();
  const auto rec = run_round_robin(pool);
  try {
    rank_standings(rec, pool);
    FAIL();
  } catch (const TournamentError& e) {
    EXPECT_EQ(e.code(), TournamentError::Code::MissingTimestamp);
  }
}

TEST(Ranking, ScoreMismatch) {
  const auto pool = random_pool(3, 1);
  std::vector<RoundRobinRecord> scores = {scored("s0", 1), scored("s1", 1)};
  EXPECT_THROW(rank_standings(scores, pool), TournamentError);
}

TEST(Points, Schedule) {
  EXPECT_EQ(rank_points(1), 200);
  EXPECT_EQ(rank_points(2), 180);
  EXPECT_EQ(rank_points(9), 100);
  EXPECT_EQ(rank_points(10), 91);
  EXPECT_EQ(rank_points(100), 1);
  EXPECT_EQ(rank_points(101), 0);
}

TEST(Points, UntiedMassIs5481) {
  std::vector<Submission> pool;
  std::vector<RoundRobinRecord> scores;
  for (int i = 0; i < 150; ++i) {
    pool.push_back(make_sub("s" + std::to_string(i), Allocation{}, i));
    scores.push_back(scored("s" + std::to_string(i), 1000 - i));
  }
  const auto st = build_standings(scores, pool);
  Points total{0};
  for (const auto& e : st) total += e.leaderboard_points;
  // Top nine sum to 1295, ranks 10..100 to 91 + 90 + ... + 1 = 4186.
  EXPECT_EQ(total, Points(5481));
}

TEST(Points, TieSplits) {
  std::vector<Submission> pool;
  std::vector<RoundRobinRecord> scores;
  const std::vector<long long> s = {100, 90, 90, 80, 70, 70, 70, 60};
  for (std::size_t i = 0; i < s.size(); ++i) {
    pool.push_back(make_sub("s" + std::to_string(i), Allocation{}, static_cast<long long>(i)));
    scores.push_back(scored("s" + std::to_string(i), s[i]));
  }
  const auto st = build_standings(scores, pool);
  const auto pts = assign_leaderboard_points(st);
  EXPECT_EQ(pts.at("s0"), Points(200));
  EXPECT_EQ(pts.at("s1"), Points(345, 2));  // 172.5
  EXPECT_EQ(pts.at("s2"), Points(345, 2));
  EXPECT_EQ(pts.at("s3"), Points(150));
  EXPECT_EQ(pts.at("s4"), Points(130));  // (140 + 130 + 120) / 3
  EXPECT_EQ(pts.at("s6"), Points(130));
  EXPECT_EQ(pts.at("s7"), Points(110));
  EXPECT_EQ(format_points(pts.at("s1")), "172.5");
}

TEST(Points, TieAcrossRankHundred) {
  std::vector<Submission> pool;
  std::vector<RoundRobinRecord> scores;
  for (int i = 0; i < 102; ++i) {
    pool.push_back(make_sub("s" + std::to_string(i), Allocation{}, i));
    // ranks 100 and 101 share a score
    scores.push_back(scored("s" + std::to_string(i), i >= 99 ? 5 : 1000 - i));
  }
  scores[101].score_half = 4;
  const auto pts = assign_leaderboard_points(build_standings(scores, pool));
  EXPECT_EQ(pts.at("s99"), Points(1, 2));
  EXPECT_EQ(pts.at("s100"), Points(1, 2));
  EXPECT_EQ(pts.at("s101"), Points(0));
  EXPECT_EQ(pts.at("s98"), Points(2));
}

TEST(Points, ThreeWayFraction) {
  std::vector<Submission> pool;
  std::vector<RoundRobinRecord> scores;
  for (int i = 0; i < 3; ++i) {
    pool.push_back(make_sub("s" + std::to_string(i), Allocation{}, i));
    scores.push_back(scored("s" + std::to_string(i), 7));
  }
  const auto pts = assign_leaderboard_points(build_standings(scores, pool));
  EXPECT_EQ(pts.at("s0"), Points(545, 3));  // (200 + 180 + 165) / 3
  EXPECT_EQ(format_points(pts.at("s0")), "181.666667");
}

TEST(Aggregate, SumsAcrossTournamentsAndBreaksTiesByTime) {
  const Allocation a;
  std::vector<Submission> subs = {
      make_sub("h1t1", a, 10, AgentType::Human, Tournament::T1, "alice"),
      make_sub("h1t2", a, 50, AgentType::Human, Tournament::T2, "alice"),
      make_sub("h2t1", a, 5, AgentType::Human, Tournament::T1, "bob"),
      make_sub("m#0", a, 60, AgentType::LLM, Tournament::T2, "m#0"),
  };
  std::array<std::map<std::string, Points>, 3> per;
  per[0] = {{"alice", Points(100)}, {"bob", Points(180)}};
  per[1] = {{"alice", Points(80)}, {"m#0", Points(180)}};
  const auto agg = aggregate_leaderboard(per, subs);
  ASSERT_EQ(agg.size(), 3u);
  // All three total 180; bob submitted first (minute 5), then alice (10), then the LLM.
  EXPECT_EQ(agg[0].participant_key, "bob");
  EXPECT_EQ(agg[1].participant_key, "alice");
  EXPECT_EQ(agg[1].total_points, Points(180));
  EXPECT_FALSE(agg[1].points_by_tournament[2].has_value());
  EXPECT_EQ(agg[2].participant_key, "m#0");
  EXPECT_TRUE(agg[2].is_llm);
  EXPECT_EQ(agg[2].final_rank, 3);
}
