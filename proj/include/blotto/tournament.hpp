#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "blotto/submission.hpp"

namespace blotto {

// Leaderboard points are exact: three-way splits such as 165/3 must compare
// exactly.
using Points = boost::rational<long long>;

class TournamentError : public std::runtime_error {
 public:
  enum class Code { DuplicateSubmissionId, MissingTimestamp, ScoreMismatch };
  TournamentError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct RoundRobinRecord {
  std::string submission_id;
  int wins = 0;
  int ties = 0;
  int losses = 0;
  // Match score S in half-points (2W + T).
  long long score_half = 0;
  // Electoral half-votes summed over all matches; feeds "states won per duel".
  long long states_half = 0;
  // States won outright (ties not counted), summed over all matches.
  long long states_strict = 0;

  double score() const { return score_half / 2.0; }
  bool operator==(const RoundRobinRecord&) const = default;
};

// Plays every unordered pair once. The result is aligned with `pool`.
// `jobs` > 1 spreads pairs over threads; integer accumulation makes the
// outcome independent of the schedule.
std::vector<RoundRobinRecord> run_round_robin(std::span<const Submission> pool, int jobs = 1);

struct StandingsEntry {
  std::size_t pool_index = 0;
  std::string submission_id;
  int wins = 0;
  int ties = 0;
  int losses = 0;
  long long score_half = 0;
  long long states_half = 0;
  long long states_strict = 0;
  int rank = 0;
  Points leaderboard_points{0};

  double score() const { return score_half / 2.0; }
};

// Orders by S descending, then timestamp ascending, then submission id.
// Throws TournamentError(MissingTimestamp) if any submission lacks a timestamp.
std::vector<StandingsEntry> rank_standings(std::span<const RoundRobinRecord> scores,
                                           std::span<const Submission> pool);

// Points for a single rank position: 200,180,165,150,140,130,120,110,100 for
// ranks 1..9, then 101-X through rank 100, zero beyond.
long long rank_points(int rank);

// Score-tied groups share the sum of the points of the positions they
// occupy; the timestamp tie-break does not affect points.
std::map<std::string, Points> assign_leaderboard_points(std::span<const StandingsEntry> entries);

// rank_standings + assign_leaderboard_points, with the points written back.
std::vector<StandingsEntry> build_standings(std::span<const RoundRobinRecord> scores,
                                            std::span<const Submission> pool);

struct AggregateEntry {
  std::string participant_key;
  std::array<std::optional<Points>, 3> points_by_tournament{};
  Points total_points{0};
  std::optional<Timestamp> first_submission;
  bool is_llm = false;
  int final_rank = 0;
};

// Sums points across tournaments (missing ones count 0) and ranks by total,
// breaking ties by the earliest submission timestamp among the participant's
// submissions in `submissions`.
std::vector<AggregateEntry> aggregate_leaderboard(
    const std::array<std::map<std::string, Points>, 3>& per_tournament,
    std::span<const Submission> submissions);

// Renders an exact rational as a trimmed decimal ("172.5", "55", "56.666667").
std::string format_points(const Points& p, int max_decimals = 6);
double to_double(const Points& p);

}  // namespace blotto
