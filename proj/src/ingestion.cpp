#include "blotto/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "blotto/csv.hpp"

namespace blotto {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<long long> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string join(const csv::Row& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += row[i];
  }
  return out;
}

void check_header(const std::vector<csv::Row>& rows, std::string_view expected) {
  if (rows.empty()) throw UnreadableInput("UnreadableInput: missing header");
  std::string got;
  for (std::size_t i = 0; i < rows[0].size(); ++i) {
    if (i) got += ',';
    got += trim(rows[0][i]);
  }
  if (got != expected) {
    throw UnreadableInput("UnreadableInput: unexpected header '" + join(rows[0]) + "'");
  }
}

std::vector<csv::Row> parse_csv_or_throw(std::string_view bytes) {
  try {
    return csv::parse(bytes);
  } catch (const std::runtime_error& e) {
    throw UnreadableInput(std::string("UnreadableInput: ") + e.what());
  }
}

ExclusionReason reason_for(ValidationCode code) {
  switch (code) {
    case ValidationCode::BudgetExceeded: return ExclusionReason::BudgetExceeded;
    case ValidationCode::NegativeEntry: return ExclusionReason::NegativeEntry;
    case ValidationCode::EntryAbove100: return ExclusionReason::EntryAbove100;
    case ValidationCode::WrongArity: return ExclusionReason::WrongArity;
  }
  return ExclusionReason::MalformedRow;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableInput("UnreadableInput: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw UnreadableInput("UnreadableInput: read failed for " + path);
  return ss.str();
}

std::string_view to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::BudgetExceeded: return "BudgetExceeded";
    case ExclusionReason::NegativeEntry: return "NegativeEntry";
    case ExclusionReason::EntryAbove100: return "EntryAbove100";
    case ExclusionReason::WrongArity: return "WrongArity";
    case ExclusionReason::Duplicate: return "Duplicate";
    case ExclusionReason::MalformedRow: return "MalformedRow";
  }
  return "Unknown";
}

ParsedSubmissions parse_submissions(std::string_view bytes) {
  const auto rows = parse_csv_or_throw(bytes);
  check_header(rows, kSubmissionsHeader);

  constexpr std::size_t kFields = 6 + kNumStates;
  ParsedSubmissions out;
  out.rows = rows.size() - 1;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::string id = row.empty() ? std::string() : std::string(trim(row[0]));
    if (id.empty()) id = "row:" + std::to_string(r);

    auto exclude = [&](ExclusionReason reason, std::string detail) {
      out.exclusions.push_back({id, reason, std::move(detail)});
    };

    if (row.size() != kFields) {
      const long long trip_cols = static_cast<long long>(row.size()) - 6;
      exclude(ExclusionReason::WrongArity,
              "expected 9 trip columns, got " + std::to_string(std::max(trip_cols, 0LL)));
      continue;
    }

    Submission s;
    s.submission_id = id;
    s.participant_id = std::string(trim(row[1]));
    if (s.participant_id.empty()) {
      exclude(ExclusionReason::MalformedRow, "empty participant_id");
      continue;
    }
    const auto t = parse_int(row[2]);
    const auto tour = t ? tournament_from_int(*t) : std::nullopt;
    if (!tour) {
      exclude(ExclusionReason::MalformedRow, "tournament must be 1, 2 or 3, got '" + row[2] + "'");
      continue;
    }
    s.tournament = *tour;
    s.timestamp = Timestamp::parse(trim(row[3]));
    if (!s.timestamp) {
      exclude(ExclusionReason::MalformedRow, "bad timestamp '" + row[3] + "'");
      continue;
    }
    const auto agent = agent_type_from_string(trim(row[4]));
    if (!agent) {
      exclude(ExclusionReason::MalformedRow, "agent_type must be human or llm, got '" + row[4] + "'");
      continue;
    }
    s.agent_type = *agent;
    const auto model = trim(row[5]);
    if (s.agent_type == AgentType::LLM) {
      if (model.empty()) {
        exclude(ExclusionReason::MalformedRow, "llm submission without model");
        continue;
      }
      s.model = std::string(model);
    } else if (!model.empty()) {
      exclude(ExclusionReason::MalformedRow, "human submission with model '" + std::string(model) + "'");
      continue;
    }

    std::vector<long long> trips;
    trips.reserve(kNumStates);
    bool ok = true;
    for (int st = 0; st < kNumStates; ++st) {
      const auto& cell = row[6 + static_cast<std::size_t>(st)];
      const auto v = parse_int(cell);
      if (!v) {
        exclude(ExclusionReason::MalformedRow,
                std::string("state ") + state_letter(st) + " is not an integer: '" + cell + "'");
        ok = false;
        break;
      }
      trips.push_back(*v);
    }
    if (!ok) continue;

    auto checked = validate_allocation(std::span<const long long>(trips));
    if (auto* err = std::get_if<ValidationError>(&checked)) {
      exclude(reason_for(err->code), err->message());
      continue;
    }
    s.allocation = std::get<Allocation>(checked);
    out.submissions.push_back(std::move(s));
  }
  return out;
}

DedupeResult dedupe_submissions(std::span<const Submission> subs, DedupePolicy policy) {
  // (participant, tournament) -> index of the current keeper
  std::map<std::pair<std::string, int>, std::size_t> keeper;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto key = std::make_pair(subs[i].participant_id, index_of(subs[i].tournament));
    auto [it, inserted] = keeper.emplace(key, i);
    if (inserted) continue;
    const auto& cur = subs[it->second];
    const auto& ts_new = subs[i].timestamp;
    const auto& ts_cur = cur.timestamp;
    const bool replace = policy == DedupePolicy::KeepLatest ? !(ts_new < ts_cur) : ts_new < ts_cur;
    if (replace) it->second = i;
  }

  std::vector<bool> keep(subs.size(), false);
  for (const auto& [_, idx] : keeper) keep[idx] = true;

  DedupeResult out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (keep[i]) {
      out.kept.push_back(subs[i]);
      continue;
    }
    const auto& winner =
        subs[keeper.at({subs[i].participant_id, index_of(subs[i].tournament)})];
    out.dropped.push_back({subs[i].submission_id, ExclusionReason::Duplicate,
                           "participant " + subs[i].participant_id + " tournament " +
                               std::to_string(static_cast<int>(subs[i].tournament)) +
                               " superseded by " + winner.submission_id});
  }
  return out;
}

void write_submissions_csv(std::ostream& os, std::span<const Submission> subs) {
  os << kSubmissionsHeader << '\n';
  for (const auto& s : subs) {
    csv::Row row{s.submission_id,
                 s.participant_id,
                 std::to_string(static_cast<int>(s.tournament)),
                 s.timestamp ? s.timestamp->iso8601() : std::string(),
                 std::string(to_string(s.agent_type)),
                 s.model.value_or("")};
    for (int st = 0; st < kNumStates; ++st) row.push_back(std::to_string(s.allocation[st]));
    csv::write_row(os, row);
  }
}

void write_exclusion_log(std::ostream& os, std::span<const ExclusionRecord> records) {
  os << "submission_id,reason,detail\n";
  for (const auto& r : records) {
    csv::write_row(os, {r.submission_id, std::string(to_string(r.reason)), r.detail});
  }
}

// ---------------------------------------------------------------------------
// Demographics

std::string_view to_string(Sex v) { return v == Sex::Female ? "Female" : "Male"; }

std::string_view to_string(Education v) {
  switch (v) {
    case Education::Secondary: return "Secondary";
    case Education::Higher: return "Higher";
    case Education::Doctoral: return "Doctoral";
  }
  return "Unknown";
}

std::string_view to_string(Employment v) {
  switch (v) {
    case Employment::NotWorking: return "NotWorking";
    case Employment::Student: return "Student";
    case Employment::Working: return "Working";
  }
  return "Unknown";
}

std::string_view to_string(Field v) {
  switch (v) {
    case Field::EconManagement: return "EconManagement";
    case Field::STEM: return "STEM";
    case Field::HumSocOther: return "HumSocOther";
  }
  return "Unknown";
}

namespace {

// Lowercase, trimmed, parenthesised gloss removed, inner whitespace collapsed.
std::string normalize_option(std::string_view raw) {
  auto s = trim(raw);
  if (auto paren = s.find(" ("); paren != std::string_view::npos && s.back() == ')') {
    s = trim(s.substr(0, paren));
  }
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

template <typename E>
E lookup(std::string_view raw, std::initializer_list<std::pair<std::string_view, E>> table,
         std::string_view what) {
  const auto key = normalize_option(raw);
  for (const auto& [name, value] : table) {
    if (key == name) return value;
  }
  throw RecodeError(RecodeError::Code::UnknownCategory, std::string(raw),
                    "UnknownCategory: " + std::string(what) + " '" + std::string(raw) + "'");
}

}  // namespace

Sex recode_sex(std::string_view raw) {
  return lookup<Sex>(raw, {{"male", Sex::Male}, {"female", Sex::Female}}, "sex");
}

Education recode_education(std::string_view raw) {
  return lookup<Education>(raw,
                           {{"incomplete secondary", Education::Secondary},
                            {"secondary", Education::Secondary},
                            {"incomplete higher", Education::Higher},
                            {"higher", Education::Higher},
                            {"doctoral degree", Education::Doctoral},
                            {"doctoral", Education::Doctoral}},
                           "education");
}

Employment recode_employment(std::string_view raw) {
  return lookup<Employment>(raw,
                            {{"studying", Employment::Student},
                             {"student", Employment::Student},
                             {"employed", Employment::Working},
                             {"self-employed / freelancer", Employment::Working},
                             {"entrepreneur / business owner", Employment::Working},
                             {"working", Employment::Working},
                             {"temporarily not working", Employment::NotWorking},
                             {"retired", Employment::NotWorking},
                             {"other", Employment::NotWorking},
                             {"not working", Employment::NotWorking},
                             {"notworking", Employment::NotWorking}},
                            "employment");
}

Field recode_field(std::string_view raw) {
  return lookup<Field>(raw,
                       {{"mathematics", Field::STEM},
                        {"computer science and technical sciences", Field::STEM},
                        {"natural sciences", Field::STEM},
                        {"stem", Field::STEM},
                        {"economics, business and management", Field::EconManagement},
                        {"economics and management", Field::EconManagement},
                        {"econmanagement", Field::EconManagement},
                        {"humanities and arts", Field::HumSocOther},
                        {"social sciences", Field::HumSocOther},
                        {"other", Field::HumSocOther},
                        {"humanities, social sciences, and other", Field::HumSocOther},
                        {"humsocother", Field::HumSocOther}},
                       "field");
}

Demographics recode_demographics(const RawSurveyRow& row) {
  Demographics d;
  d.participant_id = std::string(trim(row.participant_id));
  const auto age = parse_int(row.age);
  if (!age || *age < 0) {
    throw RecodeError(RecodeError::Code::InvalidAge, row.age, "InvalidAge: '" + row.age + "'");
  }
  d.age = static_cast<int>(*age);
  d.sex = recode_sex(row.sex);
  d.education_raw = std::string(trim(row.education));
  d.education = recode_education(row.education);
  d.employment_raw = std::string(trim(row.employment));
  d.employment = recode_employment(row.employment);
  d.field_raw = std::string(trim(row.field));
  d.field = recode_field(row.field);
  return d;
}

ParsedDemographics parse_demographics(std::string_view bytes) {
  const auto rows = parse_csv_or_throw(bytes);
  check_header(rows, kDemographicsHeader);
  ParsedDemographics out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string id = row.empty() ? "row:" + std::to_string(r) : std::string(trim(row[0]));
    if (row.size() != 6) {
      out.issues.push_back({id, true, "expected 6 fields, got " + std::to_string(row.size())});
      continue;
    }
    try {
      auto d = recode_demographics({row[0], row[1], row[2], row[3], row[4], row[5]});
      if (d.age < kObservedMinAge || d.age > kObservedMaxAge) {
        out.issues.push_back({d.participant_id, false,
                              "age " + std::to_string(d.age) + " outside observed range [10, 61]"});
      }
      out.rows.push_back(std::move(d));
    } catch (const RecodeError& e) {
      out.issues.push_back({id, true, e.what()});
    }
  }
  return out;
}

}  // namespace blotto
