#include "crisiscomm/chronology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "crisiscomm/error.hpp"

namespace crisiscomm {

using std::chrono::days;
using namespace std::chrono_literals;

PeriodSegmentation::PeriodSegmentation(std::vector<Period> periods) : periods_(std::move(periods)) {
  if (periods_.empty()) throw ConfigError("segmentation needs at least one period");
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (periods_[i].last < periods_[i].first) throw ConfigError("period '" + periods_[i].name + "' is empty");
    if (i > 0 && periods_[i].first != periods_[i - 1].last + days(1))
      throw ConfigError("period '" + periods_[i].name + "' does not start the day after its predecessor ends");
  }
}

std::size_t PeriodSegmentation::index_of(Date d) const {
  if (!window().contains(d)) throw OutOfWindowError(format_date(d) + " is outside the segmentation window");
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (d <= periods_[i].last) return i;
  }
  return periods_.size() - 1;
}

PeriodSegmentation default_segmentation() {
  using std::chrono::year;
  constexpr year y{2020};
  return PeriodSegmentation({
      {"Before the lockdown", Date{y / std::chrono::February / 21}, Date{y / std::chrono::March / 19}},
      {"Beginning of the lockdown", Date{y / std::chrono::March / 20}, Date{y / std::chrono::April / 10}},
      {"During the lockdown", Date{y / std::chrono::April / 11}, Date{y / std::chrono::May / 10}},
      {"Re-opening phase", Date{y / std::chrono::May / 11}, Date{y / std::chrono::June / 6}},
  });
}

std::optional<std::size_t> TopicFrequencySeries::row_of(Date d) const {
  if (d < first || days() == 0 || d > last_date()) return std::nullopt;
  return static_cast<std::size_t>((d - first).count());
}

namespace {

void require_daily(const BowCorpus& bow) {
  const auto& slices = bow.slices();
  if (slices.empty()) throw DataError("bag-of-words corpus has no slices");
  for (std::size_t i = 1; i < slices.size(); ++i) {
    if (slices[i].date != slices[i - 1].date + days(1))
      throw ConfigError("topic frequency needs a daily-sliced corpus");
  }
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

// Adds one document's contribution given per-topic scores (theta row or
// log-likelihoods turned into a posterior).
void add_document(std::span<double> row, std::span<const double> weights, Attribution attribution) {
  if (attribution == Attribution::kHard) {
    row[argmax_first(weights)] += 1.0;
  } else {
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (std::size_t k = 0; k < row.size(); ++k) row[k] += weights[k] / sum;
  }
}

TopicFrequencySeries empty_series(const BowCorpus& bow, std::size_t K) {
  TopicFrequencySeries tf;
  tf.first = bow.slices().front().date;
  tf.values = Matrix(bow.slices().size(), K);
  tf.documents.assign(bow.slices().size(), 0);
  return tf;
}

}  // namespace

TopicFrequencySeries topic_frequency(const LdaModel& model, const BowCorpus& bow, Attribution attribution) {
  require_daily(bow);
  if (model.document_count() != bow.size()) throw ConfigError("LDA model was not fit on this corpus");
  TopicFrequencySeries tf = empty_series(bow, model.num_topics);
  for (std::size_t k = 0; k < model.num_topics; ++k)
    tf.labels.push_back(join_words(topic_top_words(model, bow.vocabulary(), k, 3)));
  for (std::size_t t = 0; t < bow.slices().size(); ++t) {
    const auto& slice = bow.slices()[t];
    tf.documents[t] = slice.size();
    for (std::size_t d = slice.begin; d < slice.end; ++d) add_document(tf.values.row(t), model.theta.row(d), attribution);
  }
  return tf;
}

TopicFrequencySeries topic_frequency(const DtmModel& model, const BowCorpus& bow, Attribution attribution) {
  require_daily(bow);
  if (model.vocabulary_size != bow.vocabulary().size()) throw ConfigError("DTM was not fit on this vocabulary");
  const std::size_t K = model.num_topics;
  const std::size_t V = model.vocabulary_size;
  TopicFrequencySeries tf = empty_series(bow, K);

  std::vector<Matrix> log_pi(model.slices());
  std::vector<bool> ready(model.slices(), false);
  auto slice_log_pi = [&](std::size_t s) -> const Matrix& {
    if (!ready[s]) {
      log_pi[s] = Matrix(K, V);
      for (std::size_t k = 0; k < K; ++k) {
        const auto pi = model.topic_distribution(s, k);
        for (std::size_t w = 0; w < V; ++w) log_pi[s](k, w) = std::log(pi[w]);
      }
      ready[s] = true;
    }
    return log_pi[s];
  };

  Matrix mean_pi(K, V);
  for (std::size_t s = 0; s < model.slices(); ++s) {
    for (std::size_t k = 0; k < K; ++k) {
      const auto pi = model.topic_distribution(s, k);
      for (std::size_t w = 0; w < V; ++w) mean_pi(k, w) += pi[w];
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<std::string> words;
    for (TokenId id : top_word_ids(mean_pi.row(k), 3)) words.push_back(bow.vocabulary().token(id));
    tf.labels.push_back(join_words(words));
  }

  std::vector<double> loglik(K), weights(K);
  for (std::size_t t = 0; t < bow.slices().size(); ++t) {
    const auto& slice = bow.slices()[t];
    tf.documents[t] = slice.size();
    if (slice.empty()) continue;
    const Matrix& lp = slice_log_pi(model.slice_of(slice.date));
    for (std::size_t d = slice.begin; d < slice.end; ++d) {
      std::fill(loglik.begin(), loglik.end(), 0.0);
      for (const auto& tc : bow.documents()[d].counts) {
        for (std::size_t k = 0; k < K; ++k) loglik[k] += tc.count * lp(k, tc.token);
      }
      const double top = *std::max_element(loglik.begin(), loglik.end());
      for (std::size_t k = 0; k < K; ++k) weights[k] = std::exp(loglik[k] - top);
      add_document(tf.values.row(t), attribution == Attribution::kHard ? std::span<const double>(loglik)
                                                                        : std::span<const double>(weights),
                   attribution);
    }
  }
  return tf;
}

std::vector<PeriodTopWords> top_words_by_period(const BowCorpus& bow, const PeriodSegmentation& segmentation,
                                                std::size_t n, const std::optional<std::string>& agency) {
  if (n < 1) throw ConfigError("top word count must be >= 1");
  const auto& periods = segmentation.periods();
  std::vector<std::vector<std::size_t>> df(periods.size(), std::vector<std::size_t>(bow.vocabulary().size(), 0));
  std::vector<std::size_t> docs(periods.size(), 0);
  for (const auto& doc : bow.documents()) {
    if (agency && doc.agency != *agency) continue;
    const Date d = date_of(doc.timestamp);
    if (!segmentation.window().contains(d)) continue;
    const std::size_t p = segmentation.index_of(d);
    ++docs[p];
    for (const auto& tc : doc.counts) ++df[p][tc.token];
  }

  std::vector<PeriodTopWords> out;
  for (std::size_t p = 0; p < periods.size(); ++p) {
    PeriodTopWords entry{periods[p].name, docs[p], {}};
    std::vector<TokenId> ids;
    for (TokenId w = 0; w < df[p].size(); ++w) {
      if (df[p][w] > 0) ids.push_back(w);
    }
    std::stable_sort(ids.begin(), ids.end(), [&](TokenId a, TokenId b) { return df[p][a] > df[p][b]; });
    if (ids.size() > n) ids.resize(n);
    for (TokenId id : ids) entry.words.push_back(bow.vocabulary().token(id));
    out.push_back(std::move(entry));
  }
  return out;
}

AlignedReport align(const TopicFrequencySeries& topics, const SentimentSeries& sentiment,
                    const IndicatorSeries& indicators, const PeriodSegmentation& segmentation,
                    std::size_t rolling_window) {
  const DateWindow window = segmentation.window();
  auto touches = [&](Date first, Date last) { return !(last < window.first || window.last < first); };
  const bool any = (topics.days() > 0 && touches(topics.first, topics.last_date())) ||
                   touches(sentiment.first_date(), sentiment.last_date()) ||
                   touches(indicators.first_date(), indicators.last_date());
  if (!any) throw DataError("no input series overlaps the analysis window " + format_date(window.first) + " .. " +
                            format_date(window.last));

  const SentimentSeries rolling = rolling_mean(sentiment, rolling_window);
  AlignedReport report;
  report.periods = segmentation.periods();
  report.topic_labels = topics.labels;
  report.rolling_window = rolling_window;
  for (Date d = window.first; d <= window.last; d += days(1)) {
    AlignedRow row;
    row.date = d;
    row.period = segmentation.period_of(d).name;
    row.topics.resize(topics.num_topics());
    if (auto r = topics.row_of(d)) {
      for (std::size_t k = 0; k < topics.num_topics(); ++k) row.topics[k] = topics.values(*r, k);
    }
    row.sentiment_raw = sentiment.at(d);
    row.sentiment_rolling = rolling.at(d);
    if (auto ind = indicators.at(d)) {
      row.new_cases = ind->new_cases;
      row.new_deaths = ind->new_deaths;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace crisiscomm
