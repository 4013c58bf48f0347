#include "crisiscomm/calendar.hpp"

#include <charconv>
#include <cstdio>

namespace crisiscomm {
namespace {

using namespace std::chrono;

bool read_digits(std::string_view text, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

std::optional<Date> parse_date_prefix(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (!read_digits(text, 0, 4, y) || !read_digits(text, 5, 2, m) || !read_digits(text, 8, 2, d))
    return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10) return std::nullopt;
  return parse_date_prefix(text);
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  auto date = parse_date_prefix(text);
  if (!date) return std::nullopt;
  if (text.size() == 10) return Timestamp{*date};
  if (text[10] != 'T' && text[10] != ' ') return std::nullopt;

  int hh = 0, mm = 0, ss = 0;
  std::size_t pos = 11;
  if (!read_digits(text, pos, 2, hh) || pos + 2 >= text.size() || text[pos + 2] != ':' ||
      !read_digits(text, pos + 3, 2, mm))
    return std::nullopt;
  pos += 5;
  if (pos < text.size() && text[pos] == ':') {
    if (!read_digits(text, pos + 1, 2, ss)) return std::nullopt;
    pos += 3;
    if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
      ++pos;
      std::size_t digits = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        ++pos;
        ++digits;
      }
      if (digits == 0) return std::nullopt;
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;

  int offset_minutes = 0;
  if (pos < text.size()) {
    char sign = text[pos];
    if (sign == 'Z' || sign == 'z') {
      if (pos + 1 != text.size()) return std::nullopt;
    } else if (sign == '+' || sign == '-') {
      int oh = 0, om = 0;
      std::string_view rest = text.substr(pos + 1);
      if (rest.size() == 5 && rest[2] == ':') {
        if (!read_digits(rest, 0, 2, oh) || !read_digits(rest, 3, 2, om)) return std::nullopt;
      } else if (rest.size() == 4) {
        if (!read_digits(rest, 0, 2, oh) || !read_digits(rest, 2, 2, om)) return std::nullopt;
      } else if (rest.size() == 2) {
        if (!read_digits(rest, 0, 2, oh)) return std::nullopt;
      } else {
        return std::nullopt;
      }
      if (oh > 23 || om > 59) return std::nullopt;
      offset_minutes = (oh * 60 + om) * (sign == '-' ? -1 : 1);
    } else {
      return std::nullopt;
    }
  }

  Timestamp local = Timestamp{*date} + hours{hh} + minutes{mm} + seconds{ss};
  return local - minutes{offset_minutes};
}

std::string format_date(Date date) {
  year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_timestamp(Timestamp ts) {
  Date d = date_of(ts);
  hh_mm_ss<seconds> tod{ts - d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "T%02d:%02d:%02dZ", static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()), static_cast<int>(tod.seconds().count()));
  return format_date(d) + buf;
}

DateWindow default_window() {
  return {sys_days{year{2020} / February / 21}, sys_days{year{2020} / June / 6}};
}

}  // namespace crisiscomm
