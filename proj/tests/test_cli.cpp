#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "blotto/cli.hpp"
#include "blotto/csv.hpp"
#include "blotto/ingestion.hpp"
#include "blotto/level_k.hpp"
#include "blotto/pipeline.hpp"
#include "blotto/rng.hpp"
#include "stub_server.hpp"

using namespace blotto;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "blotto");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("blotto_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_inputs();
  }

  // Forty-five humans spread over reasoning levels 0..5 (plus an LLM pair)
  // in tournaments 1 and 2, with matching survey rows.
  void write_inputs() {
    std::ostringstream subs, demo;
    subs << kSubmissionsHeader << "\n";
    demo << kDemographicsHeader << "\n";
    const char* edu[] = {"Secondary", "Higher", "Doctoral degree", "Incomplete higher"};
    const char* emp[] = {"Studying", "Employed", "Retired"};
    const char* fld[] = {"Mathematics", "Economics, business and management", "Social sciences"};
    Rng rng(11);
    for (int i = 0; i < 45; ++i) {
      const int level = i % 6;
      const auto a = generate_level_k_allocation(
          {strong_count_for_level(level), i % 3, static_cast<std::uint64_t>(i)});
      for (int t = 1; t <= 2; ++t) {
        subs << "h" << i << "t" << t << ",p" << i << "," << t << ",2024-03-0" << t << "T10:"
             << (10 + i) << ":00Z,human,";
        for (int s = 0; s < 9; ++s) subs << "," << a[s];
        subs << "\n";
      }
      demo << "p" << i << "," << 18 + rng.below(40) << "," << (rng.below(2) ? "Female" : "Male")
           << "," << edu[rng.below(4)] << "," << emp[rng.below(3)] << "," << csv::escape(fld[rng.below(3)])
           << "\n";
    }
    subs << "m#0,m#0,2,2024-03-02T12:00:00Z,llm,model-a,11,11,11,11,11,11,11,11,12\n";
    subs << "m#1,m#1,2,2024-03-02T12:00:01Z,llm,model-a,20,20,20,20,20,0,0,0,0\n";
    subs << "bad,p99,1,2024-03-01T10:00:00Z,human,,60,41,0,0,0,0,0,0,0\n";
    spit(dir_ / "subs.csv", subs.str());
    spit(dir_ / "demo.csv", demo.str());
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, MissingSubmissionsIsFatalAndNamesPath) {
  const auto r = cli({"run", "--submissions", path("nope.csv"), "--out", path("o")});
  EXPECT_EQ(r.code, 2);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"], "UnreadableInput");
  EXPECT_EQ(j["path"], path("nope.csv"));
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);  // exactly one line
}

TEST_F(CliTest, UsageAndConfigErrors) {
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  spit(dir_ / "cfg.json", R"({"submissions": "x.csv", "colour": "blue"})");
  const auto r = cli({"run", "--config", path("cfg.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "ConfigError");
  spit(dir_ / "cfg.json", "{not json");
  EXPECT_EQ(cli({"run", "--config", path("cfg.json")}).code, 2);
}

TEST_F(CliTest, ValidateExitCodes) {
  const auto r = cli({"validate", "--submissions", path("subs.csv"), "--out", path("v")});
  EXPECT_EQ(r.code, 1);  // one over-budget row
  const auto log = csv::parse(slurp(dir_ / "v" / "exclusions.csv"));
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[1][0], "bad");
  EXPECT_EQ(log[1][1], "BudgetExceeded");

  const auto text = slurp(dir_ / "v" / "validated_submissions.csv");
  spit(dir_ / "clean.csv", text);
  EXPECT_EQ(cli({"validate", "--submissions", path("clean.csv"), "--out", path("v2")}).code, 0);
}

TEST_F(CliTest, TournamentFilter) {
  const auto r = cli({"run", "--submissions", path("subs.csv"), "--tournament", "1", "--out", path("t1")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "t1" / "standings_t1.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "t1" / "standings_t2.csv"));
  const auto rows = csv::parse(slurp(dir_ / "t1" / "standings_t1.csv"));
  EXPECT_EQ(rows.size(), 46u);  // header + 45 humans
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][1].substr(rows[i][1].size() - 2), "t1");
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  spit(dir_ / "cfg.json", nlohmann::json{{"submissions", path("subs.csv")},
                                         {"tournaments", {2}},
                                         {"out", path("from_cfg")},
                                         {"seed", 5}}
                              .dump());
  const auto r = cli({"run", "--config", path("cfg.json"), "--out", path("from_flag")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "from_cfg"));
  EXPECT_TRUE(fs::exists(dir_ / "from_flag" / "standings_t2.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "from_flag" / "standings_t1.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir_ / "from_flag" / "manifest.json"));
  EXPECT_EQ(manifest["config"]["seed"], 5);
  EXPECT_EQ(manifest["config"]["out"], path("from_flag"));
  EXPECT_EQ(manifest["inputs"][path("subs.csv")].get<std::string>().size(), 64u);
}

TEST_F(CliTest, AnalyzeIsByteStable) {
  for (const char* out : {"a1", "a2"}) {
    const auto r = cli({"analyze", "--submissions", path("subs.csv"), "--demographics",
                        path("demo.csv"), "--out", path(out), "--jobs", out[1] == '1' ? "1" : "3"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "a1")) {
    const auto name = entry.path().filename();
    if (name == "manifest.json") continue;
    EXPECT_EQ(slurp(entry.path()), slurp(dir_ / "a2" / name)) << name;
    ++compared;
  }
  EXPECT_GT(compared, 15u);
  auto m1 = nlohmann::json::parse(slurp(dir_ / "a1" / "manifest.json"));
  auto m2 = nlohmann::json::parse(slurp(dir_ / "a2" / "manifest.json"));
  EXPECT_EQ(m1["outputs"], m2["outputs"]);
  EXPECT_EQ(m1["inputs"], m2["inputs"]);

  const auto reg = slurp(dir_ / "a1" / "regression_t1.txt");
  EXPECT_NE(reg.find("Level 4"), std::string::npos);
  EXPECT_NE(reg.find("Observations: 45"), std::string::npos) << reg;
  EXPECT_TRUE(fs::exists(dir_ / "a1" / "model_leaderboard_t2.csv"));
  const auto surv = csv::parse(slurp(dir_ / "a1" / "survival_t2.csv"));
  EXPECT_EQ(surv.size(), 1u + 2 * 9 * 101);
}

TEST_F(CliTest, ReplayWritesEveryVariant) {
  const auto r = cli({"replay", "--submissions", path("subs.csv"), "--demographics", path("demo.csv"),
                      "--out", path("rp")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"regression_t1_match_score_HC0.txt", "regression_t2_leaderboard_points_HC3.csv",
                        "model_leaderboard_t2_match_points.csv",
                        "model_leaderboard_t2_leaderboard_points.csv", "replay_summary.txt",
                        "analysis.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "rp" / f)) << f;
  }
}

TEST_F(CliTest, BestResponse) {
  const auto r = cli({"best-response", "--submissions", path("subs.csv"), "--tournament", "2",
                      "--agent", "llm", "--out", path("br")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir_ / "br" / "best_response.json"));
  EXPECT_EQ(j["t2"]["pool_size"], 2);
  const std::vector<int> x = j["t2"]["allocation"];
  int total = 0;
  for (int v : x) total += v;
  EXPECT_LE(total, 100);
  // Score the reported allocation directly against the two LLM strategies.
  const std::vector<std::vector<int>> pool = {{11, 11, 11, 11, 11, 11, 11, 11, 12},
                                              {20, 20, 20, 20, 20, 0, 0, 0, 0}};
  double states = 0;
  for (const auto& o : pool) {
    for (int s = 0; s < 9; ++s) states += x[s] > o[s] ? 1.0 : (x[s] == o[s] ? 0.5 : 0.0);
  }
  EXPECT_DOUBLE_EQ(j["t2"]["expected_states"].get<double>(), states / 2);
}

TEST_F(CliTest, FetchLlmThroughStub) {
  StubServer stub;
  spit(dir_ / "cfg.json",
       nlohmann::json{{"llm",
                       {{"models", {"good", "chatty"}},
                        {"endpoint", stub.base_url()},
                        {"target_size", 4},
                        {"tournament", 3},
                        {"jobs", 2}}}}
           .dump());
  const auto r = cli({"fetch-llm", "--config", path("cfg.json"), "--seed", "3", "--out", path("llm")});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  const auto parsed = parse_submissions(slurp(dir_ / "llm" / "llm_submissions.csv"));
  EXPECT_EQ(parsed.submissions.size(), 4u);
  EXPECT_TRUE(parsed.exclusions.empty());
  for (const auto& s : parsed.submissions) EXPECT_EQ(s.model, "good");
  const auto audit = slurp(dir_ / "llm" / "llm_audit.jsonl");
  EXPECT_NE(audit.find("SchemaViolation"), std::string::npos);

  const auto bad = cli({"fetch-llm", "--config", path("cfg.json"), "--models", "chatty", "--out",
                        path("llm2")});
  EXPECT_EQ(bad.code, 1);  // PoolShortfall
}
