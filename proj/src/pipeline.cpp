#include "blotto/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include "blotto/best_response.hpp"
#include "blotto/csv.hpp"
#include "blotto/report.hpp"

namespace blotto {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

json FatalError::to_json() const {
  json j = {{"error", kind_}, {"message", what()}};
  if (!path_.empty()) j["path"] = path_;
  return j;
}

std::string_view to_string(RegressionTarget t) {
  return t == RegressionTarget::MatchScore ? "match_score" : "leaderboard_points";
}

// ---------------------------------------------------------------------------
// Config

namespace {

std::string_view dedupe_name(DedupePolicy p) {
  return p == DedupePolicy::KeepLatest ? "keep_latest" : "keep_earliest";
}

[[noreturn]] void config_error(const std::string& msg) { throw FatalError("ConfigError", msg); }

template <typename E>
E parse_enum(const json& v, std::initializer_list<std::pair<std::string_view, E>> options,
             const char* key) {
  const auto s = v.get<std::string>();
  for (const auto& [name, value] : options) {
    if (s == name) return value;
  }
  config_error(std::string("unknown value '") + s + "' for " + key);
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const char* where) {
  if (!j.is_object()) config_error(std::string(where) + " must be an object");
  for (const auto& [k, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      config_error(std::string("unknown key '") + k + "' in " + where);
    }
  }
}

Tournament tournament_value(const json& v) {
  const auto t = tournament_from_int(v.get<long long>());
  if (!t) config_error("tournament must be 1, 2 or 3");
  return *t;
}

}  // namespace

json RunConfig::to_json() const {
  json ts = json::array();
  for (auto t : tournaments) ts.push_back(static_cast<int>(t));
  return {{"submissions", submissions},
          {"demographics", demographics},
          {"tournaments", ts},
          {"seed", seed},
          {"jobs", jobs},
          {"dedupe", dedupe_name(dedupe)},
          {"out", out},
          {"model_basis", blotto::to_string(model_basis)},
          {"robust", blotto::to_string(robust)},
          {"regression_target", blotto::to_string(regression_target)},
          {"llm",
           {{"models", llm.models},
            {"endpoint", llm.endpoint},
            {"target_size", llm.target_size},
            {"tournament", static_cast<int>(llm.tournament)},
            {"prompt_language", llm.prompt_language},
            {"prompt_file", llm.prompt_file},
            {"sampling", llm.sampling},
            {"max_attempts", llm.max_attempts},
            {"backoff_base_ms", llm.backoff_base_ms},
            {"backoff_max_ms", llm.backoff_max_ms},
            {"max_replacements", llm.max_replacements},
            {"jobs", llm.jobs}}}};
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  try {
    check_keys(j,
               {"submissions", "demographics", "tournaments", "seed", "jobs", "dedupe", "out",
                "model_basis", "robust", "regression_target", "llm"},
               "config");
    if (j.contains("submissions")) c.submissions = j["submissions"].get<std::string>();
    if (j.contains("demographics")) c.demographics = j["demographics"].get<std::string>();
    if (j.contains("tournaments")) {
      for (const auto& t : j["tournaments"]) c.tournaments.push_back(tournament_value(t));
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    if (j.contains("dedupe")) {
      c.dedupe = parse_enum<DedupePolicy>(
          j["dedupe"], {{"keep_latest", DedupePolicy::KeepLatest},
                        {"keep_earliest", DedupePolicy::KeepEarliest}},
          "dedupe");
    }
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("model_basis")) {
      c.model_basis = parse_enum<PointsBasis>(
          j["model_basis"], {{"match_points", PointsBasis::MatchPoints},
                             {"leaderboard_points", PointsBasis::LeaderboardPoints}},
          "model_basis");
    }
    if (j.contains("robust")) {
      c.robust = parse_enum<RobustType>(j["robust"],
                                        {{"HC0", RobustType::HC0},
                                         {"HC1", RobustType::HC1},
                                         {"HC2", RobustType::HC2},
                                         {"HC3", RobustType::HC3}},
                                        "robust");
    }
    if (j.contains("regression_target")) {
      c.regression_target = parse_enum<RegressionTarget>(
          j["regression_target"], {{"match_score", RegressionTarget::MatchScore},
                                   {"leaderboard_points", RegressionTarget::LeaderboardPoints}},
          "regression_target");
    }
    if (j.contains("llm")) {
      const auto& l = j["llm"];
      check_keys(l,
                 {"models", "endpoint", "target_size", "tournament", "prompt_language",
                  "prompt_file", "sampling", "max_attempts", "backoff_base_ms", "backoff_max_ms",
                  "max_replacements", "jobs"},
                 "llm");
      if (l.contains("models")) c.llm.models = l["models"].get<std::vector<std::string>>();
      if (l.contains("endpoint")) c.llm.endpoint = l["endpoint"].get<std::string>();
      if (l.contains("target_size")) c.llm.target_size = l["target_size"].get<int>();
      if (l.contains("tournament")) c.llm.tournament = tournament_value(l["tournament"]);
      if (l.contains("prompt_language")) c.llm.prompt_language = l["prompt_language"].get<std::string>();
      if (l.contains("prompt_file")) c.llm.prompt_file = l["prompt_file"].get<std::string>();
      if (l.contains("sampling")) {
        if (!l["sampling"].is_object()) config_error("llm.sampling must be an object");
        c.llm.sampling = l["sampling"];
      }
      if (l.contains("max_attempts")) c.llm.max_attempts = l["max_attempts"].get<int>();
      if (l.contains("backoff_base_ms")) c.llm.backoff_base_ms = l["backoff_base_ms"].get<int>();
      if (l.contains("backoff_max_ms")) c.llm.backoff_max_ms = l["backoff_max_ms"].get<int>();
      if (l.contains("max_replacements")) c.llm.max_replacements = l["max_replacements"].get<int>();
      if (l.contains("jobs")) c.llm.jobs = l["jobs"].get<int>();
    }
  } catch (const json::exception& e) {
    config_error(std::string("bad config value: ") + e.what());
  }
  if (c.jobs < 1) config_error("jobs must be at least 1");
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const UnreadableInput& e) {
    throw FatalError("UnreadableInput", e.what(), path);
  }
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FatalError("ConfigError", "config is not valid JSON: " + path, path);
  return RunConfig::from_json(j);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inputs and tournaments

namespace {

std::string read_input(const std::string& path, const char* what) {
  if (path.empty()) throw FatalError("ConfigError", std::string("no ") + what + " path configured");
  try {
    return read_file(path);
  } catch (const UnreadableInput& e) {
    throw FatalError("UnreadableInput", e.what(), path);
  }
}

}  // namespace

Inputs load_inputs(const RunConfig& config) {
  Inputs in;
  const std::string bytes = read_input(config.submissions, "submissions");
  in.input_hashes[config.submissions] = sha256_hex(bytes);
  try {
    in.parsed = parse_submissions(bytes);
  } catch (const UnreadableInput& e) {
    throw FatalError("UnreadableInput", e.what(), config.submissions);
  }
  in.exclusions = in.parsed.exclusions;
  auto deduped = dedupe_submissions(in.parsed.submissions, config.dedupe);
  in.exclusions.insert(in.exclusions.end(), deduped.dropped.begin(), deduped.dropped.end());
  for (auto& s : deduped.kept) {
    if (config.tournaments.empty() ||
        std::find(config.tournaments.begin(), config.tournaments.end(), s.tournament) !=
            config.tournaments.end()) {
      in.pool.push_back(std::move(s));
    }
  }
  if (!config.demographics.empty()) {
    const std::string demo = read_input(config.demographics, "demographics");
    in.input_hashes[config.demographics] = sha256_hex(demo);
    try {
      in.demographics = parse_demographics(demo);
    } catch (const UnreadableInput& e) {
      throw FatalError("UnreadableInput", e.what(), config.demographics);
    }
  }
  return in;
}

TournamentRun play_tournament(std::span<const Submission> all, Tournament t, int jobs) {
  TournamentRun run;
  run.tournament = t;
  for (const auto& s : all) {
    if (s.tournament == t) run.pool.push_back(s);
  }
  try {
    run.records = run_round_robin(run.pool, jobs);
    run.standings = build_standings(run.records, run.pool);
  } catch (const TournamentError& e) {
    throw FatalError("TournamentError", e.what());
  }
  return run;
}

std::vector<Tournament> selected_tournaments(const RunConfig& config,
                                             std::span<const Submission> pool) {
  std::set<Tournament> present;
  for (const auto& s : pool) present.insert(s.tournament);
  if (config.tournaments.empty()) return {present.begin(), present.end()};
  std::set<Tournament> chosen(config.tournaments.begin(), config.tournaments.end());
  return {chosen.begin(), chosen.end()};
}

RegressionInputs regression_records(const TournamentRun& run,
                                    std::span<const Demographics> demographics,
                                    RegressionTarget target) {
  std::map<std::string, const Demographics*> by_id;
  for (const auto& d : demographics) by_id.emplace(d.participant_id, &d);
  RegressionInputs out;
  for (const auto& e : run.standings) {
    const auto& sub = run.pool[e.pool_index];
    if (sub.agent_type != AgentType::Human) continue;
    auto it = by_id.find(sub.participant_id);
    if (it == by_id.end()) {
      out.missing_demographics.push_back(sub.participant_id);
      continue;
    }
    const Demographics& d = *it->second;
    RegressionRecord r;
    r.participant_id = sub.participant_id;
    r.y = target == RegressionTarget::MatchScore ? e.score() : to_double(e.leaderboard_points);
    r.level = regression_level(classify_reasoning_level(sub.allocation).label);
    r.age = d.age;
    r.female = d.sex == Sex::Female;
    r.education = d.education;
    r.field = d.field;
    r.employment = d.employment;
    out.records.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output handling

namespace {

// Collects files in memory and writes them together with a manifest, so the
// manifest can list every output's hash.
class OutputSet {
 public:
  void add(std::string name, std::string bytes) { files_[std::move(name)] = std::move(bytes); }

  template <typename F>
  void add_stream(std::string name, F&& write) {
    std::ostringstream os;
    write(os);
    add(std::move(name), os.str());
  }

  void add_json(std::string name, const json& j) { add(std::move(name), j.dump(2) + "\n"); }

  void flush(const RunConfig& config, const std::string& command,
             const std::map<std::string, std::string>& input_hashes, std::ostream& log) const {
    const fs::path dir(config.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw FatalError("OutputError", "cannot create " + config.out + ": " + ec.message(), config.out);

    json outputs = json::object();
    for (const auto& [name, bytes] : files_) {
      write_file(dir / name, bytes);
      outputs[name] = sha256_hex(bytes);
    }
    const json cfg = config.to_json();
    const json manifest = {
        {"tool", "blotto"},
        {"version", kToolVersion},
        {"command", command},
        {"config", cfg},
        {"config_sha256", sha256_hex(cfg.dump())},
        {"inputs", input_hashes},
        {"outputs", outputs},
        {"versions",
         {{"compiler", __VERSION__},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                        "." + std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", BOOST_LIB_VERSION},
          {"openssl", OPENSSL_VERSION_TEXT},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
        {"generated_at", Timestamp::now().iso8601()}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    log << "wrote " << files_.size() + 1 << " files to " << config.out << "\n";
  }

 private:
  static void write_file(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) throw FatalError("OutputError", "cannot write " + p.string(), p.string());
  }

  std::map<std::string, std::string> files_;
};

std::string tag(Tournament t) { return "t" + std::to_string(static_cast<int>(t)); }

void add_exclusions(OutputSet& out, const Inputs& in) {
  out.add_stream("exclusions.csv", [&](std::ostream& os) { write_exclusion_log(os, in.exclusions); });
}

std::vector<TournamentRun> play_all(const RunConfig& config, const Inputs& in, std::ostream& log) {
  std::vector<TournamentRun> runs;
  for (auto t : selected_tournaments(config, in.pool)) {
    auto run = play_tournament(in.pool, t, config.jobs);
    log << "tournament " << static_cast<int>(t) << ": " << run.pool.size() << " strategies\n";
    if (run.pool.empty()) continue;
    runs.push_back(std::move(run));
  }
  return runs;
}

void add_standings(OutputSet& out, const RunConfig& config, const Inputs& in,
                   const std::vector<TournamentRun>& runs, json& bundle) {
  (void)config;
  std::array<std::map<std::string, Points>, 3> per_tournament;
  for (const auto& run : runs) {
    const auto t = tag(run.tournament);
    out.add_stream("standings_" + t + ".csv", [&](std::ostream& os) {
      report::write_standings_csv(os, run.standings, run.pool);
    });
    out.add_stream("standings_" + t + "_human.csv", [&](std::ostream& os) {
      report::write_standings_csv(os, run.standings, run.pool, AgentType::Human);
    });
    const auto sj = report::standings_json(run.standings, run.pool);
    out.add_json("standings_" + t + ".json", sj);
    bundle["standings"][t] = sj;
    auto& points = per_tournament[static_cast<std::size_t>(index_of(run.tournament))];
    for (const auto& e : run.standings) {
      points[aggregate_key(run.pool[e.pool_index])] = e.leaderboard_points;
    }
  }
  const auto aggregate = aggregate_leaderboard(per_tournament, in.pool);
  out.add_stream("aggregate_leaderboard.csv",
                 [&](std::ostream& os) { report::write_aggregate_csv(os, aggregate); });
  out.add_json("aggregate_leaderboard.json", report::aggregate_json(aggregate));
  bundle["aggregate_leaderboard"] = report::aggregate_json(aggregate);
}

void add_regression(OutputSet& out, const std::string& name, const std::string& title,
                    const RegressionInputs& inputs, RobustType robust, json& slot) {
  try {
    const auto fit = fit_performance_regression(inputs.records, robust);
    out.add_stream(name + ".txt",
                   [&](std::ostream& os) { report::write_regression_text(os, fit, title); });
    out.add_stream(name + ".csv", [&](std::ostream& os) { report::write_regression_csv(os, fit); });
    slot = report::regression_json(fit);
  } catch (const std::exception& e) {
    // Small or degenerate samples: report why instead of aborting the run.
    out.add(name + ".txt", title + "\nnot estimated: " + e.what() + "\n");
    slot = {{"error", e.what()}};
  }
  slot["missing_demographics"] = inputs.missing_demographics;
}

struct AnalysisOptions {
  std::vector<PointsBasis> bases;
  std::vector<RegressionTarget> targets;
  std::vector<RobustType> robust;
};

void add_analysis(OutputSet& out, const RunConfig& config, const Inputs& in,
                  const std::vector<TournamentRun>& runs, const AnalysisOptions& opt, json& bundle) {
  for (const auto& run : runs) {
    const auto t = tag(run.tournament);
    json& tb = bundle["analysis"][t];

    const auto levels = level_distribution_table(run.pool, run.records);
    out.add_stream("levels_" + t + ".csv",
                   [&](std::ostream& os) { report::write_level_table_csv(os, levels); });
    tb["levels"] = report::level_table_json(levels);

    const auto digits = unit_digit_distribution(run.pool);
    out.add_stream("digits_" + t + ".csv",
                   [&](std::ostream& os) { report::write_digit_table_csv(os, digits); });
    tb["digits"] = report::digit_table_json(digits);

    std::vector<SurvivalCurves> curves;
    for (auto agent : {AgentType::Human, AgentType::LLM}) {
      if (auto c = survival_curve(run.pool, agent)) curves.push_back(std::move(*c));
    }
    out.add_stream("survival_" + t + ".csv",
                   [&](std::ostream& os) { report::write_survival_csv(os, curves); });

    const bool has_llm = std::any_of(run.pool.begin(), run.pool.end(), [](const Submission& s) {
      return s.agent_type == AgentType::LLM;
    });
    if (has_llm || !config.llm.models.empty()) {
      for (auto basis : opt.bases) {
        const auto board = model_leaderboard(run.standings, run.pool, config.llm.models, basis);
        std::string name = "model_leaderboard_" + t;
        if (opt.bases.size() > 1) name += "_" + std::string(to_string(basis));
        out.add_stream(name + ".csv",
                       [&](std::ostream& os) { report::write_model_leaderboard_csv(os, board); });
        out.add_stream(name + "_notes.txt", [&](std::ostream& os) {
          report::write_model_leaderboard_footnote(os, board);
        });
        tb["model_leaderboard"][std::string(to_string(basis))] = report::model_leaderboard_json(board);
      }
    }

    if (in.demographics) {
      for (auto target : opt.targets) {
        const auto inputs = regression_records(run, in.demographics->rows, target);
        for (auto robust : opt.robust) {
          std::string name = "regression_" + t;
          if (opt.targets.size() > 1) name += "_" + std::string(to_string(target));
          if (opt.robust.size() > 1) name += "_" + std::string(to_string(robust));
          const std::string title = "Performance regression, tournament " +
                                    std::to_string(static_cast<int>(run.tournament)) +
                                    ", outcome " + std::string(to_string(target));
          add_regression(out, name, title, inputs, robust,
                         tb["regression"][std::string(to_string(target))]
                           [std::string(to_string(robust))]);
        }
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Subcommands

int cmd_validate(const RunConfig& config, std::ostream& log) {
  const Inputs in = load_inputs(config);
  OutputSet out;
  add_exclusions(out, in);
  out.add_stream("validated_submissions.csv",
                 [&](std::ostream& os) { write_submissions_csv(os, in.pool); });
  bool demographic_rejects = false;
  if (in.demographics) {
    out.add_stream("demographics_issues.csv", [&](std::ostream& os) {
      csv::write_row(os, {"participant_id", "status", "detail"});
      for (const auto& i : in.demographics->issues) {
        csv::write_row(os, {i.participant_id, i.rejected ? "rejected" : "warning", i.detail});
        demographic_rejects = demographic_rejects || i.rejected;
      }
    });
  }
  out.flush(config, "validate", in.input_hashes, log);
  log << in.parsed.rows << " rows, " << in.pool.size() << " kept, " << in.exclusions.size()
      << " excluded\n";
  return in.exclusions.empty() && !demographic_rejects ? 0 : 1;
}

int cmd_run(const RunConfig& config, std::ostream& log) {
  const Inputs in = load_inputs(config);
  const auto runs = play_all(config, in, log);
  OutputSet out;
  json bundle = json::object();
  add_exclusions(out, in);
  add_standings(out, config, in, runs, bundle);
  out.flush(config, "run", in.input_hashes, log);
  return 0;
}

int cmd_analyze(const RunConfig& config, std::ostream& log) {
  const Inputs in = load_inputs(config);
  const auto runs = play_all(config, in, log);
  OutputSet out;
  json bundle = json::object();
  add_exclusions(out, in);
  add_standings(out, config, in, runs, bundle);
  add_analysis(out, config, in, runs,
               {{config.model_basis}, {config.regression_target}, {config.robust}}, bundle);
  bundle["exclusions"] = report::exclusions_json(in.exclusions);
  out.add_json("analysis.json", bundle);
  out.flush(config, "analyze", in.input_hashes, log);
  return 0;
}

int cmd_replay(const RunConfig& config, std::ostream& log) {
  const Inputs in = load_inputs(config);
  const auto runs = play_all(config, in, log);
  OutputSet out;
  json bundle = json::object();
  add_exclusions(out, in);
  add_standings(out, config, in, runs, bundle);
  add_analysis(out, config, in, runs,
               {{PointsBasis::MatchPoints, PointsBasis::LeaderboardPoints},
                {RegressionTarget::MatchScore, RegressionTarget::LeaderboardPoints},
                {RobustType::HC0, RobustType::HC1, RobustType::HC2, RobustType::HC3}},
               bundle);
  bundle["exclusions"] = report::exclusions_json(in.exclusions);
  out.add_json("analysis.json", bundle);

  // Short digest of the headline numbers.
  std::ostringstream s;
  for (const auto& run : runs) {
    s << "tournament " << static_cast<int>(run.tournament) << ": " << run.pool.size()
      << " strategies\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(3, run.standings.size()); ++i) {
      const auto& e = run.standings[i];
      s << "  rank " << e.rank << " " << e.submission_id << " points "
        << report::fixed(e.score(), 1) << " "
        << to_string(run.pool[e.pool_index].allocation) << "\n";
    }
    for (const auto& r : level_distribution_table(run.pool, run.records)) {
      if (r.count == 0) continue;
      s << "  " << to_string(r.agent) << " " << to_string(r.label) << ": "
        << report::fixed(to_double(r.percent), 1) << "% score "
        << (r.mean_states_per_duel ? report::fixed(to_double(*r.mean_states_per_duel), 2) : "-")
        << " strict "
        << (r.mean_states_won_strict ? report::fixed(to_double(*r.mean_states_won_strict), 2) : "-")
        << "\n";
    }
  }
  out.add("replay_summary.txt", s.str());
  out.flush(config, "replay", in.input_hashes, log);
  log << s.str();
  return 0;
}

int cmd_best_response(const RunConfig& config, std::optional<AgentType> agent, std::ostream& log) {
  const Inputs in = load_inputs(config);
  OutputSet out;
  json results = json::object();
  for (auto t : selected_tournaments(config, in.pool)) {
    std::vector<Allocation> pool;
    for (const auto& s : in.pool) {
      if (s.tournament == t && (!agent || s.agent_type == *agent)) pool.push_back(s.allocation);
    }
    if (pool.empty()) continue;
    const auto [best, value] = best_response_expected_states(pool);
    std::vector<int> trips(best.trips().begin(), best.trips().end());
    results[tag(t)] = {{"allocation", trips},
                       {"expected_states", to_double(value)},
                       {"expected_states_exact", report::fraction(value)},
                       {"pool_size", pool.size()}};
    log << "tournament " << static_cast<int>(t) << ": " << to_string(best) << " expected states "
        << report::fixed(to_double(value), 4) << " against " << pool.size() << " strategies\n";
  }
  results["agent_filter"] = agent ? std::string(to_string(*agent)) : "all";
  out.add_json("best_response.json", results);
  out.flush(config, "best-response", in.input_hashes, log);
  return 0;
}

int cmd_fetch_llm(const RunConfig& config, std::ostream& log, llm::ChatTransport* transport,
                  const llm::Hooks& hooks) {
  const auto& lc = config.llm;
  if (lc.models.empty()) throw FatalError("ConfigError", "llm.models is empty");
  if (lc.target_size < 1) throw FatalError("ConfigError", "llm.target_size must be at least 1");
  if (lc.tournament == Tournament::T1) {
    throw FatalError("ConfigError", "LLM strategies are only elicited for tournaments 2 and 3");
  }

  llm::PromptSet prompts;
  std::map<std::string, std::string> input_hashes;
  if (!lc.prompt_file.empty()) {
    try {
      prompts = llm::load_prompt_set(lc.prompt_file);
      input_hashes[lc.prompt_file] = sha256_hex(read_file(lc.prompt_file));
    } catch (const std::exception& e) {
      throw FatalError("UnreadableInput", e.what(), lc.prompt_file);
    }
  } else if (lc.prompt_language == "en") {
    prompts = llm::english_prompts();
  } else {
    throw FatalError("ConfigError", "no built-in prompt set for language '" + lc.prompt_language +
                                        "'; set llm.prompt_file");
  }

  std::unique_ptr<llm::HttpChatTransport> http;
  if (!transport) {
    if (lc.endpoint.empty()) throw FatalError("ConfigError", "llm.endpoint is empty");
    http = std::make_unique<llm::HttpChatTransport>(lc.endpoint, llm::api_key_from_env());
    transport = http.get();
  }

  llm::PoolOptions opt;
  opt.tournament = lc.tournament;
  opt.sampling = lc.sampling;
  opt.max_attempts = lc.max_attempts;
  opt.backoff_base = std::chrono::milliseconds(lc.backoff_base_ms);
  opt.backoff_max = std::chrono::milliseconds(lc.backoff_max_ms);
  opt.max_replacements = lc.max_replacements;
  opt.jobs = lc.jobs;
  const auto pool = llm::build_llm_pool(lc.models, lc.target_size, config.seed, *transport, opt,
                                        prompts, hooks);

  OutputSet out;
  std::vector<Submission> subs;
  for (const auto& r : pool.records) subs.push_back(r.submission);
  out.add_stream("llm_submissions.csv", [&](std::ostream& os) { write_submissions_csv(os, subs); });
  out.add_stream("llm_audit.jsonl", [&](std::ostream& os) { llm::write_audit_jsonl(os, pool.audit); });
  out.add_stream("llm_records.jsonl", [&](std::ostream& os) {
    auto dump = [&](const llm::LLMStrategyRecord& r) {
      json j = {{"submission_id", r.submission.submission_id},
                {"model", r.submission.model.value_or("")},
                {"valid", r.valid},
                {"invalid_reason", r.invalid_reason ? std::string(llm::to_string(*r.invalid_reason)) : ""},
                {"detail", r.detail},
                {"attempts", r.attempt},
                {"explanation", r.explanation},
                {"raw_response", r.raw_response}};
      os << j.dump() << "\n";
    };
    for (const auto& r : pool.records) dump(r);
    for (const auto& r : pool.dropped) dump(r);
  });
  json summary = {{"planned_per_model", pool.planned_per_model},
                  {"instances_per_model", pool.instances_per_model},
                  {"attempts_per_model", pool.attempts_per_model},
                  {"replacements", pool.replacements},
                  {"valid", pool.records.size()},
                  {"invalid", pool.dropped.size()}};
  if (pool.error) summary["error"] = *pool.error;
  out.add_json("llm_pool.json", summary);
  out.flush(config, "fetch-llm", input_hashes, log);
  log << pool.records.size() << " valid strategies, " << pool.dropped.size() << " invalid, "
      << pool.replacements << " replacements\n";
  if (pool.error) {
    log << *pool.error << "\n";
    return 1;
  }
  return 0;
}

}  // namespace blotto
