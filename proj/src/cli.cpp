#include "blotto/cli.hpp"

#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "blotto/pipeline.hpp"

namespace blotto {

namespace {

struct Overrides {
  std::string config;
  std::string submissions;
  std::string demographics;
  std::vector<int> tournaments;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string out;
  std::string dedupe;
  std::string basis;
  std::string robust;
  std::string target;
  // fetch-llm
  std::vector<std::string> models;
  std::string endpoint;
  std::optional<int> target_size;
  std::string prompts;
  // best-response
  std::string agent;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--submissions", o.submissions, "submissions CSV");
  cmd->add_option("--demographics", o.demographics, "demographics CSV");
  cmd->add_option("--tournament", o.tournaments, "restrict to tournament(s) 1, 2 or 3")
      ->check(CLI::Range(1, 3));
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--dedupe", o.dedupe, "keep_latest or keep_earliest");
}

void add_analysis_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--basis", o.basis, "model leaderboard basis: match_points or leaderboard_points");
  cmd->add_option("--robust", o.robust, "HC0, HC1, HC2 or HC3");
  cmd->add_option("--y", o.target, "regression outcome: match_score or leaderboard_points");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  // Flags win over the file. Enum flags go through the same parser as the file.
  nlohmann::json j = c.to_json();
  if (!o.submissions.empty()) j["submissions"] = o.submissions;
  if (!o.demographics.empty()) j["demographics"] = o.demographics;
  if (!o.tournaments.empty()) j["tournaments"] = o.tournaments;
  if (o.seed) j["seed"] = *o.seed;
  if (o.jobs) j["jobs"] = *o.jobs;
  if (!o.out.empty()) j["out"] = o.out;
  if (!o.dedupe.empty()) j["dedupe"] = o.dedupe;
  if (!o.basis.empty()) j["model_basis"] = o.basis;
  if (!o.robust.empty()) j["robust"] = o.robust;
  if (!o.target.empty()) j["regression_target"] = o.target;
  if (!o.models.empty()) j["llm"]["models"] = o.models;
  if (!o.endpoint.empty()) j["llm"]["endpoint"] = o.endpoint;
  if (o.target_size) j["llm"]["target_size"] = *o.target_size;
  if (!o.prompts.empty()) j["llm"]["prompt_file"] = o.prompts;
  return RunConfig::from_json(j);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Electoral Race (Colonel Blotto) tournament engine and analysis"};
  app.require_subcommand(1);
  Overrides o;

  auto* validate = app.add_subcommand("validate", "parse, validate and deduplicate submissions");
  auto* run = app.add_subcommand("run", "round robin and standings");
  auto* analyze = app.add_subcommand("analyze", "standings plus strategy statistics and regression");
  auto* replay = app.add_subcommand("replay", "full reproduction over a published dataset");
  auto* best = app.add_subcommand("best-response", "best response to each tournament's pool");
  auto* fetch = app.add_subcommand("fetch-llm", "elicit an LLM pool from a chat endpoint");
  for (auto* cmd : {validate, run, analyze, replay, best, fetch}) add_common(cmd, o);
  add_analysis_flags(analyze, o);
  add_analysis_flags(replay, o);
  best->add_option("--agent", o.agent, "restrict the opponent pool to human or llm");
  fetch->add_option("--models", o.models, "model ids");
  fetch->add_option("--endpoint", o.endpoint, "base URL of the chat-completions API");
  fetch->add_option("--target", o.target_size, "number of valid strategies wanted");
  fetch->add_option("--prompts", o.prompts, "alternate prompt set (JSON)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << nlohmann::json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    const RunConfig config = resolve(o);
    if (*validate) return cmd_validate(config, out);
    if (*run) return cmd_run(config, out);
    if (*analyze) return cmd_analyze(config, out);
    if (*replay) return cmd_replay(config, out);
    if (*best) {
      std::optional<AgentType> agent;
      if (!o.agent.empty()) {
        agent = agent_type_from_string(o.agent);
        if (!agent) throw FatalError("ConfigError", "--agent must be human or llm");
      }
      return cmd_best_response(config, agent, out);
    }
    if (*fetch) return cmd_fetch_llm(config, out);
  } catch (const FatalError& e) {
    err << e.to_json().dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << nlohmann::json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return 2;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace blotto
