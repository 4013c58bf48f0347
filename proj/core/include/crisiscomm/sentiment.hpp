#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crisiscomm/calendar.hpp"
#include "crisiscomm/corpus.hpp"
#include "crisiscomm/preprocess.hpp"

namespace crisiscomm {

// token -> valence in [-1, 1]. Files carry integers in [-5, 5] that are
// divided by 5 at load.
class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  // Valences must lie in [-1, 1]; tokens are lowercased.
  explicit SentimentLexicon(const std::unordered_map<std::string, double>& valences);

  std::optional<double> valence(std::string_view token) const;
  std::size_t size() const { return valences_.size(); }

 private:
  std::unordered_map<std::string, double> valences_;
};

// `token<TAB>integer` lines; blank lines and `#` comments skipped.
// Throws DataError on malformed lines or valences outside [-5, 5].
SentimentLexicon load_lexicon(std::istream& source);

struct SentimentOptions {
  // Flip the valence of a lexicon word directly preceded by "not".
  bool negation = false;
};

// Mean valence of the lexicon-matched tokens; 0 when nothing matches.
double score_text(std::string_view text, const SentimentLexicon& lexicon, const Tokenizer& tokenizer = Tokenizer{},
                  const SentimentOptions& options = {});

// Daily series over a contiguous date range. Days without tweets carry no
// value (std::nullopt), never a zero.
class SentimentSeries {
 public:
  SentimentSeries(Date first, std::vector<std::optional<double>> values, std::vector<std::size_t> counts);

  Date first_date() const { return first_; }
  Date last_date() const { return first_ + std::chrono::days(static_cast<int>(values_.size()) - 1); }
  DateWindow span() const { return {first_date(), last_date()}; }
  std::size_t size() const { return values_.size(); }
  const std::vector<std::optional<double>>& values() const { return values_; }
  const std::vector<std::size_t>& counts() const { return counts_; }
  std::optional<double> at(Date d) const;

  bool operator==(const SentimentSeries&) const = default;

 private:
  Date first_;
  std::vector<std::optional<double>> values_;
  std::vector<std::size_t> counts_;
};

// Unweighted per-day mean of per-tweet scores over the corpus span.
SentimentSeries daily_sentiment(const Corpus& corpus, const SentimentLexicon& lexicon,
                                const Tokenizer& tokenizer = Tokenizer{}, const SentimentOptions& options = {});

// Trailing inclusive window of `window_days` days; averages only the days
// that have a value, and yields no value when none in the window does.
// Tweet counts are carried over unchanged. Throws ConfigError for window < 1.
SentimentSeries rolling_mean(const SentimentSeries& series, std::size_t window_days);

// `date,tweet_count,mean_score` CSV; undefined means are written empty.
void write_sentiment(const SentimentSeries& series, std::ostream& sink);
SentimentSeries read_sentiment(std::istream& source);

}  // namespace crisiscomm
