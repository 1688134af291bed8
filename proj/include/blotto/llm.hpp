#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "blotto/submission.hpp"

namespace blotto::llm {

// ---------------------------------------------------------------------------
// Prompts

struct PromptSet {
  std::string language;  // "en" for the built-in set
  std::string system;
  std::string user_t2;
  std::string user_t3;
};

// The English prompt set, byte-for-byte fixed.
const PromptSet& english_prompts();

// Loads {"language": ..., "system": ..., "user_t2": ..., "user_t3": ...}.
// Throws std::runtime_error on a missing file or field.
PromptSet load_prompt_set(const std::string& path);

// Throws std::invalid_argument for Tournament 1 (no LLMs take part).
const std::string& user_prompt(const PromptSet& prompts, Tournament t);

// ---------------------------------------------------------------------------
// Response contract

enum class InvalidReason {
  TransportError,
  SchemaViolation,
  TotalMismatch,
  BudgetExceeded,
  NegativeEntry,
  EntryAbove100
};

std::string_view to_string(InvalidReason r);

struct ResponseCheck {
  std::optional<Allocation> allocation;  // set iff valid
  std::string explanation;
  std::optional<InvalidReason> reason;
  std::string detail;

  bool valid() const { return allocation.has_value(); }
};

// The content must be exactly {"A":int,...,"I":int,"total":int,
// "explanation":string}, optionally surrounded by whitespace. Nothing is
// repaired: fences, extra keys, non-integers, a declared total that differs
// from the entry sum, and budget violations are all rejected.
ResponseCheck check_response_content(std::string_view content);

// ---------------------------------------------------------------------------
// Transport

struct ChatRequest {
  std::string model;
  std::string system;
  std::string user;
  nlohmann::json sampling = nlohmann::json::object();  // merged verbatim into the body
};

struct ChatReply {
  int status = 0;
  std::string body;
};

// Connection-level failure (no HTTP status).
class TransportFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  // Throws TransportFailure when no reply was obtained.
  virtual ChatReply post(const ChatRequest& request) = 0;
};

nlohmann::json build_request_body(const ChatRequest& request);

// choices[0].message.content of a chat-completions reply body.
std::optional<std::string> extract_content(std::string_view body);

// POSTs to <base_url>/chat/completions with a bearer token.
class HttpChatTransport : public ChatTransport {
 public:
  HttpChatTransport(std::string base_url, std::string api_key,
                    std::chrono::seconds timeout = std::chrono::seconds(120));
  ChatReply post(const ChatRequest& request) override;

 private:
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // prefix + "/chat/completions"
  std::string api_key_;
  std::chrono::seconds timeout_;
};

// Reads BLOTTO_LLM_API_KEY; empty when unset.
std::string api_key_from_env();

// ---------------------------------------------------------------------------
// Elicitation

// Time sources are injectable so that runs against a deterministic stub can
// be bit-reproducible.
struct Hooks {
  std::function<Timestamp()> now = [] { return Timestamp::now(); };
  std::function<long long()> monotonic_ms = [] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  };
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to this_thread::sleep_for
};

struct LLMRequestSpec {
  std::string model;
  Tournament tournament = Tournament::T3;
  nlohmann::json sampling = nlohmann::json::object();
  int max_attempts = 3;
  std::chrono::milliseconds backoff_base{500};
  std::chrono::milliseconds backoff_max{8000};
};

struct AttemptLog {
  std::string model;
  std::string submission_id;
  int attempt = 0;
  long long latency_ms = 0;
  bool valid = false;
  std::optional<InvalidReason> invalid_reason;
  std::string detail;
  nlohmann::json sampling;

  nlohmann::json to_json() const;
};

struct LLMStrategyRecord {
  Submission submission;
  std::string explanation;
  std::string raw_response;
  int attempt = 0;  // transport attempts used
  bool valid = false;
  std::optional<InvalidReason> invalid_reason;
  std::string detail;
  std::vector<AttemptLog> attempts;
};

// Delay before retry number `retry` (1-based): base * 2^(retry-1), capped.
std::chrono::milliseconds backoff_delay(const LLMRequestSpec& spec, int retry);

// Sends the system message and the tournament's user prompt, retrying
// transport failures (connection errors, 429 and 5xx) with exponential
// backoff. Content problems are never retried here; they yield an invalid
// record. `submission_id` names the instance, e.g. "openai/gpt-5#3".
LLMStrategyRecord request_llm_strategy(const LLMRequestSpec& spec, ChatTransport& transport,
                                       const std::string& submission_id,
                                       const PromptSet& prompts = english_prompts(),
                                       const Hooks& hooks = {});

struct PoolOptions {
  Tournament tournament = Tournament::T3;
  nlohmann::json sampling = nlohmann::json::object();
  int max_attempts = 3;
  std::chrono::milliseconds backoff_base{500};
  std::chrono::milliseconds backoff_max{8000};
  // Requests allowed beyond the initial plan before giving up.
  int max_replacements = 0;  // 0 means 4 * target_size
  int jobs = 4;              // bounded in-flight requests
};

struct PoolResult {
  // Valid records only, ordered by model id then instance index.
  std::vector<LLMStrategyRecord> records;
  // Invalid records, in issue order.
  std::vector<LLMStrategyRecord> dropped;
  std::vector<AttemptLog> audit;
  std::map<std::string, int> planned_per_model;
  std::map<std::string, int> instances_per_model;  // valid records
  std::map<std::string, int> attempts_per_model;   // transport attempts
  int replacements = 0;
  std::optional<std::string> error;  // "PoolShortfall: ..." when under target
};

// Plans floor/ceil-balanced instances per model (the first target % |models|
// models get one extra), drops invalid outputs, then refills the shortfall
// with models drawn uniformly at random from `seed` until `target_size`
// valid records exist or the replacement budget runs out.
PoolResult build_llm_pool(const std::vector<std::string>& models, int target_size,
                          std::uint64_t seed, ChatTransport& transport,
                          const PoolOptions& options = {},
                          const PromptSet& prompts = english_prompts(), const Hooks& hooks = {});

void write_audit_jsonl(std::ostream& os, const std::vector<AttemptLog>& audit);

}  // namespace blotto::llm
