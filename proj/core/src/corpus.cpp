#include "crisiscomm/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "crisiscomm/error.hpp"
#include "json.hpp"

namespace crisiscomm {
namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_retweet_or_reply(const std::string& text) {
  std::string_view t = trim(text);
  return t.rfind("RT @", 0) == 0 || t.rfind("@", 0) == 0;
}

std::string line_error(std::size_t line, const std::string& message) {
  return "line " + std::to_string(line) + ": " + message;
}

}  // namespace

Corpus::Corpus(std::string agency, std::vector<TweetRecord> records)
    : agency_(std::move(agency)), records_(std::move(records)) {
  if (records_.empty()) throw DataError("corpus is empty");
  std::unordered_set<std::string> ids;
  for (const auto& r : records_) {
    if (!ids.insert(r.id).second) throw DataError("duplicate record id '" + r.id + "'");
    if (is_blank(r.text)) throw DataError("record '" + r.id + "' has blank text");
  }
  std::stable_sort(records_.begin(), records_.end(),
                   [](const TweetRecord& a, const TweetRecord& b) { return a.timestamp < b.timestamp; });
}

TweetIngestResult ingest_tweets(std::istream& source, const IngestOptions& options) {
  std::vector<TweetRecord> records;
  std::unordered_set<std::string> seen_ids;
  std::set<std::string> agencies;
  std::size_t skipped = 0, out_of_window = 0, filtered = 0;
  std::vector<LineIssue> issues;

  auto reject = [&](std::size_t line_no, std::string message) {
    if (options.strict) throw DataError(line_error(line_no, message));
    ++skipped;
    issues.push_back({line_no, std::move(message)});
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (is_blank(line)) continue;

    nlohmann::json obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      reject(line_no, "not a JSON object");
      continue;
    }
    bool fields_ok = true;
    for (const char* key : {"id", "created_at", "agency", "text"}) {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_string()) {
        reject(line_no, std::string("missing or non-string field '") + key + "'");
        fields_ok = false;
        break;
      }
    }
    if (!fields_ok) continue;

    TweetRecord rec;
    rec.id = obj["id"].get<std::string>();
    rec.agency = obj["agency"].get<std::string>();
    rec.text = obj["text"].get<std::string>();
    const auto created_at = obj["created_at"].get<std::string>();

    auto ts = parse_timestamp(created_at);
    if (!ts) {
      reject(line_no, "unparseable created_at '" + created_at + "'");
      continue;
    }
    rec.timestamp = *ts;
    if (rec.id.empty()) {
      reject(line_no, "empty id");
      continue;
    }
    if (is_blank(rec.text)) {
      reject(line_no, "blank text");
      continue;
    }
    if (options.agency_filter && rec.agency != *options.agency_filter) {
      ++filtered;
      continue;
    }
    if (options.drop_retweets && is_retweet_or_reply(rec.text)) {
      ++filtered;
      continue;
    }
    if (options.window && !options.window->contains(date_of(rec.timestamp))) {
      ++out_of_window;
      continue;
    }
    if (!seen_ids.insert(rec.id).second) {
      reject(line_no, "duplicate id '" + rec.id + "'");
      continue;
    }
    agencies.insert(rec.agency);
    records.push_back(std::move(rec));
  }

  if (records.empty()) {
    std::ostringstream msg;
    msg << "no usable tweet records (" << skipped << " malformed, " << out_of_window
        << " outside window, " << filtered << " filtered)";
    throw DataError(msg.str());
  }
  if (out_of_window > 0) {
    issues.push_back({0, std::to_string(out_of_window) + " record(s) outside the analysis window dropped"});
  }

  std::string label;
  if (options.agency_filter) {
    label = *options.agency_filter;
  } else if (agencies.size() == 1) {
    label = *agencies.begin();
  } else {
    label = "mixed";
  }

  return TweetIngestResult{Corpus(std::move(label), std::move(records)), skipped, out_of_window, filtered,
                           std::move(issues)};
}

void write_tweets(const Corpus& corpus, std::ostream& sink) {
  for (const auto& r : corpus.records()) {
    nlohmann::ordered_json obj;
    obj["id"] = r.id;
    obj["created_at"] = format_timestamp(r.timestamp);
    obj["agency"] = r.agency;
    obj["text"] = r.text;
    sink << obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

IndicatorSeries::IndicatorSeries(Date first, std::vector<DailyIndicator> days, std::size_t fill_count)
    : first_(first), days_(std::move(days)), fill_count_(fill_count) {
  if (days_.empty()) throw DataError("indicator series is empty");
  for (const auto& d : days_) {
    if (d.new_cases < 0 || d.new_deaths < 0) throw DataError("indicator counts must be nonnegative");
  }
}

std::optional<DailyIndicator> IndicatorSeries::at(Date d) const {
  if (d < first_ || d > last_date()) return std::nullopt;
  return days_[static_cast<std::size_t>((d - first_).count())];
}

namespace {

bool parse_count(std::string_view field, std::int64_t& out) {
  field = trim(field);
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

IndicatorSeries ingest_indicators(std::istream& source) {
  std::map<Date, DailyIndicator> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(source, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto fields = split_commas(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 3 && trim(fields[0]) == "date" && trim(fields[1]) == "new_cases" &&
          trim(fields[2]) == "new_deaths")
        continue;
      throw DataError(line_error(line_no, "expected header 'date,new_cases,new_deaths'"));
    }
    if (fields.size() != 3) throw DataError(line_error(line_no, "expected 3 fields"));
    auto date = parse_date(trim(fields[0]));
    if (!date) throw DataError(line_error(line_no, "unparseable date '" + std::string(fields[0]) + "'"));
    DailyIndicator value;
    if (!parse_count(fields[1], value.new_cases) || !parse_count(fields[2], value.new_deaths))
      throw DataError(line_error(line_no, "counts must be integers"));
    if (value.new_cases < 0 || value.new_deaths < 0)
      throw DataError(line_error(line_no, "negative count"));
    if (!rows.emplace(*date, value).second)
      throw DataError(line_error(line_no, "duplicate date " + format_date(*date)));
  }
  if (rows.empty()) throw DataError("indicator file has no data rows");

  const Date first = rows.begin()->first;
  const Date last = rows.rbegin()->first;
  std::vector<DailyIndicator> days(static_cast<std::size_t>(days_inclusive(first, last)));
  for (const auto& [date, value] : rows) days[static_cast<std::size_t>((date - first).count())] = value;
  const std::size_t filled = days.size() - rows.size();
  return IndicatorSeries(first, std::move(days), filled);
}

void write_indicators(const IndicatorSeries& series, std::ostream& sink) {
  sink << "date,new_cases,new_deaths\n";
  Date d = series.first_date();
  for (const auto& v : series.days()) {
    sink << format_date(d) << ',' << v.new_cases << ',' << v.new_deaths << '\n';
    d += std::chrono::days(1);
  }
}

std::vector<DaySlice> slice_by_day(const Corpus& corpus) {
  const Date first = corpus.first_date();
  std::vector<DaySlice> slices(static_cast<std::size_t>(days_inclusive(first, corpus.last_date())));
  for (std::size_t i = 0; i < slices.size(); ++i) slices[i].date = first + std::chrono::days(static_cast<int>(i));
  const auto& recs = corpus.records();
  for (std::size_t i = 0; i < recs.size(); ++i) {
    slices[static_cast<std::size_t>((date_of(recs[i].timestamp) - first).count())].records.push_back(i);
  }
  return slices;
}

}  // namespace crisiscomm
