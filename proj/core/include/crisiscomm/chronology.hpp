#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crisiscomm/calendar.hpp"
#include "crisiscomm/corpus.hpp"
#include "crisiscomm/dtm.hpp"
#include "crisiscomm/lda.hpp"
#include "crisiscomm/matrix.hpp"
#include "crisiscomm/preprocess.hpp"
#include "crisiscomm/sentiment.hpp"

namespace crisiscomm {

struct Period {
  std::string name;
  Date first;
  Date last;  // inclusive

  bool operator==(const Period&) const = default;
};

// Ordered, contiguous, non-overlapping periods.
class PeriodSegmentation {
 public:
  // Throws ConfigError unless every period is non-empty and each starts the
  // day after its predecessor ends.
  explicit PeriodSegmentation(std::vector<Period> periods);

  const std::vector<Period>& periods() const { return periods_; }
  DateWindow window() const { return {periods_.front().first, periods_.back().last}; }
  // Throws OutOfWindowError for dates outside window().
  std::size_t index_of(Date d) const;
  const Period& period_of(Date d) const { return periods_[index_of(d)]; }

 private:
  std::vector<Period> periods_;
};

// Before the lockdown       2020-02-21 .. 2020-03-19
// Beginning of the lockdown 2020-03-20 .. 2020-04-10
// During the lockdown       2020-04-11 .. 2020-05-10
// Re-opening phase          2020-05-11 .. 2020-06-06
PeriodSegmentation default_segmentation();

enum class Attribution {
  kHard,  // one count per document to its dominant topic
  kSoft,  // the document's topic posterior, summing to 1
};

struct TopicFrequencySeries {
  Date first;
  Matrix values;                     // days x K
  std::vector<std::size_t> documents;  // per day
  std::vector<std::string> labels;   // top-3 words per topic

  std::size_t days() const { return values.rows(); }
  std::size_t num_topics() const { return values.cols(); }
  Date last_date() const { return first + std::chrono::days(static_cast<int>(days()) - 1); }
  std::optional<std::size_t> row_of(Date d) const;
};

// Per-day topic frequency over the slices of a daily BowCorpus. The model
// must have been fit on `bow` (document order matters for LDA).
TopicFrequencySeries topic_frequency(const LdaModel& model, const BowCorpus& bow,
                                     Attribution attribution = Attribution::kHard);
// A document dated in DTM slice t goes to the topic maximizing its
// multinomial log-likelihood under natural_to_mean(beta[t][k]).
TopicFrequencySeries topic_frequency(const DtmModel& model, const BowCorpus& bow,
                                     Attribution attribution = Attribution::kHard);

struct PeriodTopWords {
  std::string period;
  std::size_t documents = 0;
  std::vector<std::string> words;
};

// Within-period document frequency ranking, ties by token id. Only documents
// from `agency` count when it is given. Empty periods yield empty lists.
std::vector<PeriodTopWords> top_words_by_period(const BowCorpus& bow, const PeriodSegmentation& segmentation,
                                                std::size_t n, const std::optional<std::string>& agency = {});

struct AlignedRow {
  Date date;
  std::string period;
  std::vector<std::optional<double>> topics;  // K cells
  std::optional<double> sentiment_raw;
  std::optional<double> sentiment_rolling;
  std::optional<std::int64_t> new_cases;
  std::optional<std::int64_t> new_deaths;
};

struct AgencyTopWords {
  std::string agency;
  std::vector<PeriodTopWords> periods;
};

struct AlignedReport {
  std::vector<Period> periods;
  std::vector<std::string> topic_labels;
  std::size_t rolling_window = 1;
  std::vector<AlignedRow> rows;  // one per day of the segmentation window
  std::vector<AgencyTopWords> top_words;
};

// Outer join of the three series on the segmentation window. Cells without
// data are left empty. Throws DataError when none of the series touches the
// window.
AlignedReport align(const TopicFrequencySeries& topics, const SentimentSeries& sentiment,
                    const IndicatorSeries& indicators, const PeriodSegmentation& segmentation,
                    std::size_t rolling_window = 1);

}  // namespace crisiscomm
