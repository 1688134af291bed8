#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "blotto/core.hpp"
#include "blotto/timestamp.hpp"

namespace blotto {

enum class Tournament { T1 = 1, T2 = 2, T3 = 3 };
enum class AgentType { Human, LLM };

inline int index_of(Tournament t) { return static_cast<int>(t) - 1; }
std::optional<Tournament> tournament_from_int(long long n);
std::string_view to_string(AgentType t);  // "human" / "llm"
std::optional<AgentType> agent_type_from_string(std::string_view s);

struct Submission {
  std::string submission_id;
  std::string participant_id;
  Tournament tournament = Tournament::T1;
  AgentType agent_type = AgentType::Human;
  std::optional<std::string> model;  // set iff agent_type == LLM
  std::optional<Timestamp> timestamp;
  Allocation allocation;
};

// Key used by the cross-tournament leaderboard: humans aggregate by
// participant, every LLM instance stands alone.
inline const std::string& aggregate_key(const Submission& s) {
  return s.agent_type == AgentType::LLM ? s.submission_id : s.participant_id;
}

}  // namespace blotto
