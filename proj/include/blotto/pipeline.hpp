#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "blotto/analysis.hpp"
#include "blotto/ingestion.hpp"
#include "blotto/llm.hpp"
#include "blotto/regression.hpp"
#include "blotto/tournament.hpp"

namespace blotto {

// A failure that stops the run. `kind` is a stable machine-readable tag.
class FatalError : public std::runtime_error {
 public:
  FatalError(std::string kind, const std::string& message, std::string path = {})
      : std::runtime_error(message), kind_(std::move(kind)), path_(std::move(path)) {}
  const std::string& kind() const { return kind_; }
  const std::string& path() const { return path_; }
  nlohmann::json to_json() const;

 private:
  std::string kind_;
  std::string path_;
};

// Dependent variable of the performance regression.
enum class RegressionTarget { MatchScore, LeaderboardPoints };

struct LLMConfig {
  std::vector<std::string> models;
  std::string endpoint;
  int target_size = 0;
  Tournament tournament = Tournament::T3;
  std::string prompt_language = "en";
  std::string prompt_file;  // alternate prompt set, overrides prompt_language
  nlohmann::json sampling = nlohmann::json::object();
  int max_attempts = 3;
  int backoff_base_ms = 500;
  int backoff_max_ms = 8000;
  int max_replacements = 0;
  int jobs = 4;
};

struct RunConfig {
  std::string submissions;
  std::string demographics;
  std::vector<Tournament> tournaments;  // empty: every tournament present
  LLMConfig llm;
  std::uint64_t seed = 0;
  int jobs = 1;
  DedupePolicy dedupe = DedupePolicy::KeepLatest;
  std::string out = "out";
  PointsBasis model_basis = PointsBasis::MatchPoints;
  RobustType robust = RobustType::HC1;
  RegressionTarget regression_target = RegressionTarget::MatchScore;

  // Canonical form; unknown keys are rejected by from_json.
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

// Throws FatalError("ConfigError" / "UnreadableInput").
RunConfig load_run_config(const std::string& path);

std::string sha256_hex(std::string_view bytes);

struct Inputs {
  ParsedSubmissions parsed;
  std::vector<Submission> pool;  // valid, deduplicated, tournament-filtered
  std::vector<ExclusionRecord> exclusions;  // parse + dedupe, in that order
  std::optional<ParsedDemographics> demographics;
  std::map<std::string, std::string> input_hashes;  // path -> sha256
};

// Reads, validates, deduplicates and filters. Missing or unreadable files
// raise FatalError naming the path.
Inputs load_inputs(const RunConfig& config);

struct TournamentRun {
  Tournament tournament = Tournament::T1;
  std::vector<Submission> pool;
  std::vector<RoundRobinRecord> records;  // aligned with pool
  std::vector<StandingsEntry> standings;  // ranked
};

TournamentRun play_tournament(std::span<const Submission> all, Tournament t, int jobs);

// Tournaments to play: the configured ones, or those present in the pool.
std::vector<Tournament> selected_tournaments(const RunConfig& config,
                                             std::span<const Submission> pool);

// Human observations of one tournament joined with demographics.
struct RegressionInputs {
  std::vector<RegressionRecord> records;
  std::vector<std::string> missing_demographics;  // participants without a survey row
};
RegressionInputs regression_records(const TournamentRun& run,
                                    std::span<const Demographics> demographics,
                                    RegressionTarget target);

std::string_view to_string(RegressionTarget t);

// Subcommands. Each returns an exit code (0 ok, 1 validation-only
// failures) and throws FatalError for anything fatal. `log` receives short
// progress lines.
int cmd_validate(const RunConfig& config, std::ostream& log);
int cmd_run(const RunConfig& config, std::ostream& log);
int cmd_analyze(const RunConfig& config, std::ostream& log);
int cmd_replay(const RunConfig& config, std::ostream& log);
int cmd_best_response(const RunConfig& config, std::optional<AgentType> agent, std::ostream& log);
// `transport` and `hooks` may be replaced in tests; null means HTTP to
// config.llm.endpoint with BLOTTO_LLM_API_KEY.
int cmd_fetch_llm(const RunConfig& config, std::ostream& log,
                  llm::ChatTransport* transport = nullptr, const llm::Hooks& hooks = {});

}  // namespace blotto
