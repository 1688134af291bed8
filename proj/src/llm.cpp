#include "blotto/llm.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "httplib.h"

#include "blotto/rng.hpp"

namespace blotto::llm {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Prompts

namespace {

constexpr std::string_view kSystemMessage =
    "You are a tournament participant. Reply ONLY with a JSON object strictly following this "
    "schema:\n"
    "\n"
    "{\"A\": <int>, \"B\": <int>, \"C\": <int>, \"D\": <int>, \"E\": <int>, \"F\": <int>, "
    "\"G\": <int>, \"H\": <int>, \"I\": <int>, \"total\": <int ≤ 100>, "
    "\"explanation\": <string in Russian>}\n"
    "\n"
    "The total number of trips must be ≤ 100. Do not add any text, any symbols outside the "
    "JSON object, or any Markdown.";

constexpr std::string_view kUserHead =
    "A tournament in the game \"Pre-Election Race\" is being conducted. The rules of a one-shot "
    "game of \"Pre-Election Race\" are given below:\n"
    "\n"
    "1. Two candidates compete for the presidency of a fictional overseas country.\n"
    "\n"
    "2. The overseas country has 9 states: A, B, C, D, E, F, G, H, I.\n"
    "\n"
    "3. Each candidate has resources for 100 campaign trips.\n"
    "\n"
    "4. Each of the two candidates simultaneously and independently decides how many times and "
    "to which states to travel. Each state may be visited any integer number of times from 0 to "
    "100.\n"
    "\n"
    "5. In each state, the candidate who visited that state more times wins. For winning each of "
    "the 9 states, the candidate receives 1 electoral vote. If the candidates visited a given "
    "state the same number of times, the election in that state ends in a tie, and both players "
    "receive 0.5 electoral votes.\n"
    "\n"
    "6. The president is the candidate who receives more electoral votes. The winner receives 1 "
    "point. If the candidates receive the same number of electoral votes, each receives 0.5 "
    "points.\n"
    "\n"
    "You are one of the candidates. Please indicate, for each of the nine states A, B, C, D, E, "
    "F, G, H, I, how many trips you will make to that state. In total, you may make no more than "
    "100 trips.\n"
    "\n"
    "All strategies entered into the tournament will play against one another in a round-robin "
    "format, that is, each strategy will play exactly one match against every other strategy. In "
    "the final tournament table, strategies are ranked by the total number of points earned "
    "across all presidential races.\n"
    "\n";

constexpr std::string_view kOpponentsT2 =
    "In this tournament, your opponents will include both strategies submitted by other people "
    "and one strategy from each of several popular modern large language models. We expect "
    "several hundred human strategies and 5–10 strategies from different large language "
    "models. Your goal is to score as many points as possible across all presidential races and "
    "thereby finish as high as possible in the tournament standings.";

constexpr std::string_view kOpponentsT3 =
    "In this tournament, your opponents will include both strategies submitted by other people "
    "and strategies from several popular modern large language models. We expect several hundred "
    "human strategies and approximately the same number of strategies from different large "
    "language models. Your goal is to score as many points as possible across all presidential "
    "races and thereby finish as high as possible in the tournament standings.";

constexpr std::string_view kUserTail =
    "\n"
    "\n"
    "In your answer, you must also provide a justification for your decision.\n"
    "\n"
    "Required response format:\n"
    "\n"
    "{\"A\": <number of trips>, \"B\": <number of trips>, \"C\": <number of trips>, "
    "\"D\": <number of trips>, \"E\": <number of trips>, \"F\": <number of trips>, "
    "\"G\": <number of trips>, \"H\": <number of trips>, \"I\": <number of trips>, "
    "\"total\": <sum of all trips, ≤ 100>, "
    "\"explanation\": <why this allocation of trips was chosen>}";

}  // namespace

const PromptSet& english_prompts() {
  static const PromptSet set = [] {
    PromptSet p;
    p.language = "en";
    p.system = std::string(kSystemMessage);
    p.user_t2 = std::string(kUserHead) + std::string(kOpponentsT2) + std::string(kUserTail);
    p.user_t3 = std::string(kUserHead) + std::string(kOpponentsT3) + std::string(kUserTail);
    return p;
  }();
  return set;
}

PromptSet load_prompt_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open prompt set " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("prompt set " + path + ": " + e.what());
  }
  PromptSet p;
  for (auto [key, dst] : {std::pair{"language", &p.language}, std::pair{"system", &p.system},
                          std::pair{"user_t2", &p.user_t2}, std::pair{"user_t3", &p.user_t3}}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw std::runtime_error("prompt set " + path + ": missing string field '" + key + "'");
    }
    *dst = j[key].get<std::string>();
  }
  return p;
}

const std::string& user_prompt(const PromptSet& prompts, Tournament t) {
  switch (t) {
    case Tournament::T2: return prompts.user_t2;
    case Tournament::T3: return prompts.user_t3;
    default: throw std::invalid_argument("no LLM prompt for tournament 1");
  }
}

// ---------------------------------------------------------------------------
// Response contract

std::string_view to_string(InvalidReason r) {
  switch (r) {
    case InvalidReason::TransportError: return "TransportError";
    case InvalidReason::SchemaViolation: return "SchemaViolation";
    case InvalidReason::TotalMismatch: return "TotalMismatch";
    case InvalidReason::BudgetExceeded: return "BudgetExceeded";
    case InvalidReason::NegativeEntry: return "NegativeEntry";
    case InvalidReason::EntryAbove100: return "EntryAbove100";
  }
  return "Unknown";
}

ResponseCheck check_response_content(std::string_view content) {
  ResponseCheck out;
  auto reject = [&](InvalidReason r, std::string detail) {
    out.reason = r;
    out.detail = std::move(detail);
    return out;
  };

  json j = json::parse(content.begin(), content.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return reject(InvalidReason::SchemaViolation, "content is not a bare JSON object");
  if (!j.is_object()) return reject(InvalidReason::SchemaViolation, "top-level value is not an object");

  std::array<long long, kNumStates> entries{};
  for (int s = 0; s < kNumStates; ++s) {
    const std::string key(1, state_letter(s));
    auto it = j.find(key);
    if (it == j.end()) return reject(InvalidReason::SchemaViolation, "missing key " + key);
    if (!it->is_number_integer()) {
      return reject(InvalidReason::SchemaViolation, "key " + key + " is not an integer");
    }
    if (it->is_number_unsigned() && it->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      return reject(InvalidReason::SchemaViolation, "key " + key + " is out of range");
    }
    entries[static_cast<std::size_t>(s)] = it->get<long long>();
  }
  auto total_it = j.find("total");
  if (total_it == j.end() || !total_it->is_number_integer()) {
    return reject(InvalidReason::SchemaViolation, "missing integer key total");
  }
  auto expl_it = j.find("explanation");
  if (expl_it == j.end() || !expl_it->is_string()) {
    return reject(InvalidReason::SchemaViolation, "missing string key explanation");
  }
  if (j.size() != kNumStates + 2) {
    for (const auto& [key, _] : j.items()) {
      const bool known = key == "total" || key == "explanation" ||
                         (key.size() == 1 && key[0] >= 'A' && key[0] <= 'I');
      if (!known) return reject(InvalidReason::SchemaViolation, "unexpected key " + key);
    }
  }
  out.explanation = expl_it->get<std::string>();

  long long sum = 0;
  for (long long v : entries) sum += v;
  const long long declared = total_it->get<long long>();
  if (declared != sum) {
    return reject(InvalidReason::TotalMismatch,
                  "declared total " + std::to_string(declared) + " but entries sum to " +
                      std::to_string(sum));
  }

  auto checked = validate_allocation(std::span<const long long>(entries));
  if (auto* err = std::get_if<ValidationError>(&checked)) {
    InvalidReason r = InvalidReason::BudgetExceeded;
    if (err->code == ValidationCode::NegativeEntry) r = InvalidReason::NegativeEntry;
    if (err->code == ValidationCode::EntryAbove100) r = InvalidReason::EntryAbove100;
    return reject(r, err->message());
  }
  out.allocation = std::get<Allocation>(checked);
  return out;
}

// ---------------------------------------------------------------------------
// Transport

json build_request_body(const ChatRequest& request) {
  json body = request.sampling.is_object() ? request.sampling : json::object();
  body["model"] = request.model;
  body["messages"] = json::array({
      {{"role", "system"}, {"content", request.system}},
      {{"role", "user"}, {"content", request.user}},
  });
  return body;
}

std::optional<std::string> extract_content(std::string_view body) {
  json j = json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty()) return std::nullopt;
  const auto& first = (*choices)[0];
  if (!first.is_object() || !first.contains("message")) return std::nullopt;
  const auto& msg = first["message"];
  if (!msg.is_object() || !msg.contains("content") || !msg["content"].is_string()) return std::nullopt;
  return msg["content"].get<std::string>();
}

HttpChatTransport::HttpChatTransport(std::string base_url, std::string api_key,
                                     std::chrono::seconds timeout)
    : api_key_(std::move(api_key)), timeout_(timeout) {
  while (!base_url.empty() && base_url.back() == '/') base_url.pop_back();
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint must start with http:// or https://: " + base_url);
  }
  const auto path_start = base_url.find('/', scheme_end + 3);
  origin_ = base_url.substr(0, path_start);
  path_ = (path_start == std::string::npos ? std::string() : base_url.substr(path_start)) +
          "/chat/completions";
}

ChatReply HttpChatTransport::post(const ChatRequest& request) {
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(path_, headers, build_request_body(request).dump(), "application/json");
  if (!res) throw TransportFailure("request failed: " + httplib::to_string(res.error()));
  return {res->status, res->body};
}

std::string api_key_from_env() {
  const char* v = std::getenv("BLOTTO_LLM_API_KEY");
  return v ? std::string(v) : std::string();
}

// ---------------------------------------------------------------------------
// Elicitation

json AttemptLog::to_json() const {
  json j;
  j["model"] = model;
  j["submission_id"] = submission_id;
  j["attempt"] = attempt;
  j["latency_ms"] = latency_ms;
  j["valid"] = valid;
  j["invalid_reason"] = invalid_reason ? json(std::string(to_string(*invalid_reason))) : json(nullptr);
  j["detail"] = detail;
  j["sampling"] = sampling;
  return j;
}

std::chrono::milliseconds backoff_delay(const LLMRequestSpec& spec, int retry) {
  auto d = spec.backoff_base;
  for (int i = 1; i < retry && d < spec.backoff_max; ++i) d *= 2;
  return std::min(d, spec.backoff_max);
}

namespace {

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

LLMStrategyRecord request_llm_strategy(const LLMRequestSpec& spec, ChatTransport& transport,
                                       const std::string& submission_id,
                                       const PromptSet& prompts, const Hooks& hooks) {
  ChatRequest req{spec.model, prompts.system, user_prompt(prompts, spec.tournament), spec.sampling};

  LLMStrategyRecord rec;
  rec.submission.submission_id = submission_id;
  rec.submission.participant_id = submission_id;
  rec.submission.tournament = spec.tournament;
  rec.submission.agent_type = AgentType::LLM;
  rec.submission.model = spec.model;

  const int max_attempts = std::max(spec.max_attempts, 1);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (attempt > 1) {
      const auto delay = backoff_delay(spec, attempt - 1);
      if (hooks.sleep) {
        hooks.sleep(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
    }
    AttemptLog log{spec.model, submission_id, attempt, 0, false, std::nullopt, {}, spec.sampling};
    const long long start = hooks.monotonic_ms();
    std::optional<std::string> content;
    std::string failure;
    bool retry = false;
    try {
      const ChatReply reply = transport.post(req);
      rec.raw_response = reply.body;
      if (reply.status < 200 || reply.status >= 300) {
        failure = "HTTP " + std::to_string(reply.status);
        retry = retryable_status(reply.status);
      } else if (content = extract_content(reply.body); !content) {
        failure = "reply has no choices[0].message.content";
        retry = true;
      }
    } catch (const TransportFailure& e) {
      failure = e.what();
      retry = true;
    }
    log.latency_ms = hooks.monotonic_ms() - start;
    rec.attempt = attempt;

    if (!content) {
      log.invalid_reason = InvalidReason::TransportError;
      log.detail = failure;
      rec.attempts.push_back(log);
      rec.invalid_reason = InvalidReason::TransportError;
      rec.detail = failure;
      if (retry) continue;
      break;
    }

    rec.raw_response = *content;
    auto check = check_response_content(*content);
    rec.submission.timestamp = hooks.now();
    rec.explanation = check.explanation;
    rec.valid = check.valid();
    rec.invalid_reason = check.reason;
    rec.detail = check.detail;
    if (check.allocation) rec.submission.allocation = *check.allocation;
    log.valid = rec.valid;
    log.invalid_reason = rec.invalid_reason;
    log.detail = rec.detail;
    rec.attempts.push_back(log);
    return rec;
  }
  if (!rec.submission.timestamp) rec.submission.timestamp = hooks.now();
  return rec;
}

namespace {

struct Task {
  std::string model;
  int instance = 0;
};

std::string instance_id(const std::string& model, int instance) {
  return model + "#" + std::to_string(instance);
}

}  // namespace

PoolResult build_llm_pool(const std::vector<std::string>& models, int target_size,
                          std::uint64_t seed, ChatTransport& transport,
                          const PoolOptions& options, const PromptSet& prompts,
                          const Hooks& hooks) {
  if (target_size < 1) throw std::invalid_argument("target_size must be >= 1");
  if (models.empty()) throw std::invalid_argument("at least one model is required");

  PoolResult result;
  std::map<std::string, int> next_instance;
  std::mutex counters_mu;

  auto run_batch = [&](const std::vector<Task>& tasks) {
    std::vector<LLMStrategyRecord> out(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        LLMRequestSpec spec{tasks[i].model, options.tournament, options.sampling,
                            options.max_attempts, options.backoff_base, options.backoff_max};
        out[i] = request_llm_strategy(spec, transport, instance_id(tasks[i].model, tasks[i].instance),
                                      prompts, hooks);
        std::lock_guard lock(counters_mu);
        result.attempts_per_model[tasks[i].model] += out[i].attempt;
      }
    };
    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(options.jobs, 1)), tasks.size());
    if (n_workers <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }
    return out;
  };

  std::vector<LLMStrategyRecord> valid;
  auto absorb = [&](std::vector<LLMStrategyRecord>&& batch) {
    for (auto& rec : batch) {
      for (const auto& a : rec.attempts) result.audit.push_back(a);
      if (rec.valid) {
        valid.push_back(std::move(rec));
      } else {
        result.dropped.push_back(std::move(rec));
      }
    }
  };

  const int m = static_cast<int>(models.size());
  std::vector<Task> initial;
  for (int i = 0; i < m; ++i) {
    const int planned = target_size / m + (i < target_size % m ? 1 : 0);
    result.planned_per_model[models[static_cast<std::size_t>(i)]] += planned;
    for (int k = 0; k < planned; ++k) {
      initial.push_back({models[static_cast<std::size_t>(i)], next_instance[models[static_cast<std::size_t>(i)]]++});
    }
  }
  absorb(run_batch(initial));

  const int budget = options.max_replacements > 0 ? options.max_replacements : 4 * target_size;
  Rng rng(seed);
  while (static_cast<int>(valid.size()) < target_size && result.replacements < budget) {
    const int n = std::min(target_size - static_cast<int>(valid.size()), budget - result.replacements);
    std::vector<Task> refill;
    for (int k = 0; k < n; ++k) {
      const auto& model = models[rng.below(models.size())];
      refill.push_back({model, next_instance[model]++});
    }
    result.replacements += n;
    absorb(run_batch(refill));
  }

  std::sort(valid.begin(), valid.end(), [](const LLMStrategyRecord& a, const LLMStrategyRecord& b) {
    const auto& ma = *a.submission.model;
    const auto& mb = *b.submission.model;
    if (ma != mb) return ma < mb;
    const auto ia = std::stoi(a.submission.submission_id.substr(ma.size() + 1));
    const auto ib = std::stoi(b.submission.submission_id.substr(mb.size() + 1));
    return ia < ib;
  });
  for (const auto& rec : valid) ++result.instances_per_model[*rec.submission.model];
  result.records = std::move(valid);

  if (static_cast<int>(result.records.size()) < target_size) {
    result.error = "PoolShortfall: " + std::to_string(result.records.size()) + " of " +
                   std::to_string(target_size) + " valid strategies after " +
                   std::to_string(result.replacements) + " replacement requests";
  }
  return result;
}

void write_audit_jsonl(std::ostream& os, const std::vector<AttemptLog>& audit) {
  for (const auto& a : audit) os << a.to_json().dump() << '\n';
}

}  // namespace blotto::llm
