#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace crisiscomm {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

// Parses `YYYY-MM-DD`. Returns nullopt on anything else, including
// impossible dates such as 2020-02-30.
std::optional<Date> parse_date(std::string_view text);

// Parses an ISO-8601 date-time and converts it to UTC. Accepted forms:
//   YYYY-MM-DD
//   YYYY-MM-DDTHH:MM[:SS[.fff...]][Z|+HH:MM|-HH:MM|+HHMM]
// A space is accepted in place of 'T'. Without an offset the value is UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);

std::string format_date(Date date);
// `YYYY-MM-DDTHH:MM:SSZ`
std::string format_timestamp(Timestamp ts);

inline Date date_of(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

// Inclusive day count of [first, last]; 0 when last < first.
inline std::int64_t days_inclusive(Date first, Date last) {
  return last < first ? 0 : (last - first).count() + 1;
}

struct DateWindow {
  Date first;
  Date last;

  bool contains(Date d) const { return first <= d && d <= last; }
  std::int64_t length() const { return days_inclusive(first, last); }
};

// 2020-02-21 .. 2020-06-06, the default analysis window.
DateWindow default_window();

}  // namespace crisiscomm
