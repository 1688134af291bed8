#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace blotto {

// A UTC instant with millisecond resolution.
class Timestamp {
 public:
  using Clock = std::chrono::system_clock;
  using TimePoint = std::chrono::time_point<Clock, std::chrono::milliseconds>;

  Timestamp() = default;
  explicit Timestamp(TimePoint tp) : tp_(tp) {}

  // Accepts "YYYY-MM-DDTHH:MM:SS[.fff]" followed by "Z" or "+HH:MM"/"-HH:MM".
  static std::optional<Timestamp> parse(std::string_view text);
  static Timestamp from_millis(long long ms);
  static Timestamp now();

  long long millis() const { return tp_.time_since_epoch().count(); }
  TimePoint time_point() const { return tp_; }

  // "YYYY-MM-DDTHH:MM:SS.mmmZ", or without the fraction when it is zero.
  std::string iso8601() const;

  auto operator<=>(const Timestamp&) const = default;

 private:
  TimePoint tp_{};
};

}  // namespace blotto
