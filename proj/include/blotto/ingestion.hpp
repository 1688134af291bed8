#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blotto/submission.hpp"

namespace blotto {

// File-level failure: the input could not be read or lacks the expected
// header. Row-level problems never raise; they become ExclusionRecords.
class UnreadableInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);

enum class ExclusionReason {
  BudgetExceeded,
  NegativeEntry,
  EntryAbove100,
  WrongArity,
  Duplicate,
  MalformedRow
};

std::string_view to_string(ExclusionReason r);

struct ExclusionRecord {
  std::string submission_id;
  ExclusionReason reason;
  std::string detail;

  bool operator==(const ExclusionRecord&) const = default;
};

struct ParsedSubmissions {
  std::vector<Submission> submissions;
  std::vector<ExclusionRecord> exclusions;
  std::size_t rows = 0;  // data rows seen, excluding the header
};

inline constexpr std::string_view kSubmissionsHeader =
    "submission_id,participant_id,tournament,timestamp,agent_type,model,A,B,C,D,E,F,G,H,I";

ParsedSubmissions parse_submissions(std::string_view bytes);

enum class DedupePolicy { KeepLatest, KeepEarliest };

struct DedupeResult {
  std::vector<Submission> kept;
  std::vector<ExclusionRecord> dropped;
};

// At most one submission per (participant_id, tournament). Kept entries stay
// in input order. Equal timestamps resolve by file position (the later row
// for KeepLatest, the earlier for KeepEarliest).
DedupeResult dedupe_submissions(std::span<const Submission> subs,
                                DedupePolicy policy = DedupePolicy::KeepLatest);

void write_submissions_csv(std::ostream& os, std::span<const Submission> subs);
void write_exclusion_log(std::ostream& os, std::span<const ExclusionRecord> records);

// ---------------------------------------------------------------------------
// Demographics

enum class Sex { Male, Female };
enum class Education { Secondary, Higher, Doctoral };
enum class Employment { NotWorking, Student, Working };
enum class Field { EconManagement, STEM, HumSocOther };

std::string_view to_string(Sex v);
std::string_view to_string(Education v);
std::string_view to_string(Employment v);
std::string_view to_string(Field v);

struct RawSurveyRow {
  std::string participant_id;
  std::string age;
  std::string sex;
  std::string education;
  std::string employment;
  std::string field;
};

struct Demographics {
  std::string participant_id;
  int age = 0;
  Sex sex = Sex::Male;
  std::string education_raw;
  Education education = Education::Higher;
  std::string employment_raw;
  Employment employment = Employment::NotWorking;
  std::string field_raw;
  Field field = Field::HumSocOther;
};

class RecodeError : public std::runtime_error {
 public:
  enum class Code { UnknownCategory, InvalidAge };
  RecodeError(Code code, std::string value, const std::string& what)
      : std::runtime_error(what), code_(code), value_(std::move(value)) {}
  Code code() const { return code_; }
  // The offending raw value.
  const std::string& value() const { return value_; }

 private:
  Code code_;
  std::string value_;
};

// Collapses survey options into the analysis categories. Matching ignores
// case and surrounding whitespace, accepts an option with or without its
// parenthesised gloss, and accepts the recoded names themselves (so the
// mapping is idempotent). Throws RecodeError.
Demographics recode_demographics(const RawSurveyRow& row);

Education recode_education(std::string_view raw);
Employment recode_employment(std::string_view raw);
Field recode_field(std::string_view raw);
Sex recode_sex(std::string_view raw);

inline constexpr int kObservedMinAge = 10;
inline constexpr int kObservedMaxAge = 61;

struct DemographicsIssue {
  std::string participant_id;
  bool rejected = false;  // false: warning only, the row was kept
  std::string detail;
};

struct ParsedDemographics {
  std::vector<Demographics> rows;
  std::vector<DemographicsIssue> issues;
};

inline constexpr std::string_view kDemographicsHeader =
    "participant_id,age,sex,education,employment,field";

ParsedDemographics parse_demographics(std::string_view bytes);

}  // namespace blotto
