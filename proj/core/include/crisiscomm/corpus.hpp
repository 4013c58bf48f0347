#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crisiscomm/calendar.hpp"

namespace crisiscomm {

struct TweetRecord {
  std::string id;
  Timestamp timestamp;
  std::string agency;
  std::string text;

  bool operator==(const TweetRecord&) const = default;
};

// Time-ordered, validated collection of agency messages. Immutable once built.
class Corpus {
 public:
  // Sorts by timestamp (stable, ties keep input order) and validates:
  // non-empty, unique ids, non-blank text. Throws DataError otherwise.
  Corpus(std::string agency, std::vector<TweetRecord> records);

  const std::string& agency() const { return agency_; }
  const std::vector<TweetRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  Date first_date() const { return date_of(records_.front().timestamp); }
  Date last_date() const { return date_of(records_.back().timestamp); }
  DateWindow span() const { return {first_date(), last_date()}; }

  bool operator==(const Corpus&) const = default;

 private:
  std::string agency_;
  std::vector<TweetRecord> records_;
};

struct LineIssue {
  std::size_t line = 0;
  std::string message;
};

struct IngestOptions {
  // Keep only records whose agency equals this label.
  std::optional<std::string> agency_filter;
  // Records dated outside the window are dropped and counted.
  std::optional<DateWindow> window;
  // Abort on the first malformed line instead of skipping it.
  bool strict = false;
  // Drop retweets ("RT @..." prefix) and replies (leading "@mention").
  bool drop_retweets = false;
};

struct TweetIngestResult {
  Corpus corpus;
  std::size_t skipped_malformed = 0;
  std::size_t dropped_out_of_window = 0;
  std::size_t dropped_by_filter = 0;
  std::vector<LineIssue> issues;
};

// Reads line-delimited JSON objects with string fields id, created_at,
// agency, text. Blank lines are ignored.
TweetIngestResult ingest_tweets(std::istream& source, const IngestOptions& options = {});

// Inverse of ingest_tweets: one JSON object per line, timestamps in UTC.
void write_tweets(const Corpus& corpus, std::ostream& sink);

struct DailyIndicator {
  std::int64_t new_cases = 0;
  std::int64_t new_deaths = 0;

  bool operator==(const DailyIndicator&) const = default;
};

// Contiguous daily outbreak counts.
class IndicatorSeries {
 public:
  IndicatorSeries(Date first, std::vector<DailyIndicator> days, std::size_t fill_count = 0);

  Date first_date() const { return first_; }
  Date last_date() const { return first_ + std::chrono::days(static_cast<int>(days_.size()) - 1); }
  DateWindow span() const { return {first_date(), last_date()}; }
  std::size_t size() const { return days_.size(); }
  // Number of interior dates absent from the source and zero-filled.
  std::size_t fill_count() const { return fill_count_; }
  const std::vector<DailyIndicator>& days() const { return days_; }
  std::optional<DailyIndicator> at(Date d) const;

  bool operator==(const IndicatorSeries&) const = default;

 private:
  Date first_;
  std::vector<DailyIndicator> days_;
  std::size_t fill_count_ = 0;
};

// Reads `date,new_cases,new_deaths` CSV. Rows may come in any order.
// Negative counts, duplicate dates and malformed rows are fatal (DataError).
IndicatorSeries ingest_indicators(std::istream& source);

void write_indicators(const IndicatorSeries& series, std::ostream& sink);

struct DaySlice {
  Date date;
  std::vector<std::size_t> records;  // indices into Corpus::records()
};

// One slice per calendar day over the corpus span, empty days included.
std::vector<DaySlice> slice_by_day(const Corpus& corpus);

}  // namespace crisiscomm
