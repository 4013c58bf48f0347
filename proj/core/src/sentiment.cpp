#include "crisiscomm/sentiment.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "crisiscomm/error.hpp"
#include "crisiscomm/numeric_text.hpp"

namespace crisiscomm {

SentimentLexicon::SentimentLexicon(const std::unordered_map<std::string, double>& valences) {
  for (const auto& [token, v] : valences) {
    if (!(v >= -1.0 && v <= 1.0)) throw DataError("valence for '" + token + "' outside [-1, 1]");
    std::string lower = token;
    for (char& c : lower) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    valences_[lower] = v;
  }
}

std::optional<double> SentimentLexicon::valence(std::string_view token) const {
  auto it = valences_.find(std::string(token));
  if (it == valences_.end()) return std::nullopt;
  return it->second;
}

SentimentLexicon load_lexicon(std::istream& source) {
  std::unordered_map<std::string, double> valences;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0)
      throw DataError("lexicon line " + std::to_string(line_no) + ": expected token<TAB>valence");
    int value = 0;
    const char* begin = line.data() + tab + 1;
    const char* end = line.data() + line.size();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
      throw DataError("lexicon line " + std::to_string(line_no) + ": valence is not an integer");
    if (value < -5 || value > 5)
      throw DataError("lexicon line " + std::to_string(line_no) + ": valence outside [-5, 5]");
    valences[line.substr(0, tab)] = value / 5.0;
  }
  return SentimentLexicon(valences);
}

double score_text(std::string_view text, const SentimentLexicon& lexicon, const Tokenizer& tokenizer,
                  const SentimentOptions& options) {
  const auto tokens = tokenizer.unfiltered(text);
  double sum = 0.0;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokenizer.stoplist().contains(tokens[i])) continue;
    auto v = lexicon.valence(tokens[i]);
    if (!v) continue;
    double value = *v;
    if (options.negation && i > 0 && tokens[i - 1] == "not") value = -value;
    sum += value;
    ++matched;
  }
  return matched ? sum / static_cast<double>(matched) : 0.0;
}

SentimentSeries::SentimentSeries(Date first, std::vector<std::optional<double>> values,
                                 std::vector<std::size_t> counts)
    : first_(first), values_(std::move(values)), counts_(std::move(counts)) {
  if (values_.empty()) throw DataError("sentiment series is empty");
  if (values_.size() != counts_.size()) throw ConfigError("sentiment values/counts size mismatch");
}

std::optional<double> SentimentSeries::at(Date d) const {
  if (d < first_ || d > last_date()) return std::nullopt;
  return values_[static_cast<std::size_t>((d - first_).count())];
}

SentimentSeries daily_sentiment(const Corpus& corpus, const SentimentLexicon& lexicon, const Tokenizer& tokenizer,
                                const SentimentOptions& options) {
  const auto slices = slice_by_day(corpus);
  std::vector<std::optional<double>> values;
  std::vector<std::size_t> counts;
  values.reserve(slices.size());
  counts.reserve(slices.size());
  for (const auto& day : slices) {
    counts.push_back(day.records.size());
    if (day.records.empty()) {
      values.emplace_back();
      continue;
    }
    double sum = 0.0;
    for (std::size_t idx : day.records) sum += score_text(corpus.records()[idx].text, lexicon, tokenizer, options);
    values.emplace_back(sum / static_cast<double>(day.records.size()));
  }
  return SentimentSeries(corpus.first_date(), std::move(values), std::move(counts));
}

SentimentSeries rolling_mean(const SentimentSeries& series, std::size_t window_days) {
  if (window_days < 1) throw ConfigError("rolling window must be >= 1 day");
  const auto& in = series.values();
  std::vector<std::optional<double>> out(in.size());
  for (std::size_t t = 0; t < in.size(); ++t) {
    const std::size_t start = t + 1 >= window_days ? t + 1 - window_days : 0;
    double sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t s = start; s <= t; ++s) {
      if (in[s]) {
        sum += *in[s];
        ++defined;
      }
    }
    if (defined) out[t] = sum / static_cast<double>(defined);
  }
  return SentimentSeries(series.first_date(), std::move(out), series.counts());
}

void write_sentiment(const SentimentSeries& series, std::ostream& sink) {
  sink << "date,tweet_count,mean_score\n";
  Date d = series.first_date();
  for (std::size_t i = 0; i < series.size(); ++i) {
    sink << format_date(d) << ',' << series.counts()[i] << ',';
    if (series.values()[i]) sink << format_number(*series.values()[i]);
    sink << '\n';
    d += std::chrono::days(1);
  }
}

SentimentSeries read_sentiment(std::istream& source) {
  std::string line;
  if (!std::getline(source, line) || line.rfind("date,tweet_count,mean_score", 0) != 0)
    throw DataError("sentiment file: missing header");
  std::optional<Date> first;
  std::vector<std::optional<double>> values;
  std::vector<std::size_t> counts;
  std::size_t line_no = 1;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw DataError("sentiment line " + std::to_string(line_no) + ": expected 3 fields");
    auto date = parse_date(std::string_view(line).substr(0, c1));
    if (!date) throw DataError("sentiment line " + std::to_string(line_no) + ": bad date");
    if (!first) first = date;
    if (*date != *first + std::chrono::days(static_cast<int>(values.size())))
      throw DataError("sentiment line " + std::to_string(line_no) + ": dates are not contiguous");
    std::size_t count = 0;
    auto count_field = std::string_view(line).substr(c1 + 1, c2 - c1 - 1);
    auto [p1, e1] = std::from_chars(count_field.data(), count_field.data() + count_field.size(), count);
    if (e1 != std::errc() || p1 != count_field.data() + count_field.size())
      throw DataError("sentiment line " + std::to_string(line_no) + ": bad count");
    counts.push_back(count);
    auto value_field = std::string_view(line).substr(c2 + 1);
    if (value_field.empty()) {
      values.emplace_back();
    } else {
      auto v = parse_number(value_field);
      if (!v) throw DataError("sentiment line " + std::to_string(line_no) + ": bad score");
      values.emplace_back(*v);
    }
  }
  if (!first) throw DataError("sentiment file has no rows");
  return SentimentSeries(*first, std::move(values), std::move(counts));
}

}  // namespace crisiscomm
