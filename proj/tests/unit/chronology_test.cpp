#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "crisiscomm/chronology.hpp"
#include "crisiscomm/error.hpp"
#include "support/builders.hpp"
#include "support/planted.hpp"

using namespace crisiscomm;
using namespace crisiscomm::testing;

namespace {

// Daily bow over [first, first + days) with the given documents per day.
BowCorpus daily_bow(const Vocabulary& vocab, Date first, const std::vector<std::vector<std::vector<TokenCount>>>& days,
                    const std::vector<std::string>& agencies = {}) {
  std::vector<BowDocument> docs;
  std::vector<BowSlice> slices;
  for (std::size_t d = 0; d < days.size(); ++d) {
    const std::size_t begin = docs.size();
    for (const auto& counts : days[d]) {
      const std::string agency = agencies.empty() ? "cdc" : agencies[docs.size() % agencies.size()];
      docs.push_back({"d" + std::to_string(docs.size()), agency,
                      Timestamp(first + std::chrono::days(d)) + std::chrono::hours(9), counts});
    }
    slices.push_back({first + std::chrono::days(d), begin, docs.size()});
  }
  return BowCorpus(vocab, std::move(docs), std::move(slices));
}

LdaModel theta_model(const BowCorpus& bow, const std::vector<std::vector<double>>& theta) {
  LdaModel m;
  m.num_topics = theta[0].size();
  m.vocabulary_hash = bow.vocabulary().hash();
  m.phi = Matrix(m.num_topics, bow.vocabulary().size(), 1.0 / static_cast<double>(bow.vocabulary().size()));
  m.theta = Matrix(theta.size(), m.num_topics);
  for (std::size_t d = 0; d < theta.size(); ++d)
    for (std::size_t k = 0; k < m.num_topics; ++k) m.theta(d, k) = theta[d][k];
  return m;
}

}  // namespace

TEST(Segmentation, DefaultBoundaries) {
  const auto seg = default_segmentation();
  ASSERT_EQ(seg.periods().size(), 4u);
  EXPECT_EQ(seg.period_of(day("2020-03-19")).name, "Before the lockdown");
  EXPECT_EQ(seg.period_of(day("2020-03-20")).name, "Beginning of the lockdown");
  EXPECT_EQ(seg.index_of(day("2020-05-11")), 3u);
  EXPECT_THROW(seg.index_of(day("2020-01-01")), OutOfWindowError);
  EXPECT_EQ(seg.window().length(), 107);
}

TEST(Segmentation, RejectsGapsAndOverlaps) {
  EXPECT_THROW(PeriodSegmentation({{"a", day("2020-03-01"), day("2020-03-05")}, {"b", day("2020-03-07"), day("2020-03-09")}}),
               ConfigError);
  EXPECT_THROW(PeriodSegmentation({{"a", day("2020-03-01"), day("2020-03-05")}, {"b", day("2020-03-05"), day("2020-03-09")}}),
               ConfigError);
  EXPECT_THROW(PeriodSegmentation({{"a", day("2020-03-05"), day("2020-03-01")}}), ConfigError);
  EXPECT_THROW(PeriodSegmentation({}), ConfigError);
}

TEST(TopicFrequency, HardAttribution) {
  const auto vocab = synthetic_vocabulary(4);
  const auto bow = daily_bow(vocab, day("2020-03-01"), {{{{0, 1}}}, {}});
  const auto tf = topic_frequency(theta_model(bow, {{0.2, 0.1, 0.7}}), bow);
  ASSERT_EQ(tf.days(), 2u);
  EXPECT_EQ(tf.values(0, 2), 1.0);
  EXPECT_EQ(tf.values(0, 0), 0.0);
  EXPECT_EQ(tf.values(0, 1), 0.0);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(tf.values(1, k), 0.0);
  EXPECT_EQ(tf.documents, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(tf.labels.size(), 3u);
}

TEST(TopicFrequency, ConservationHardAndSoft) {
  const auto vocab = synthetic_vocabulary(4);
  std::vector<std::vector<std::vector<TokenCount>>> days(2);
  std::vector<std::vector<double>> theta;
  for (int d = 0; d < 10; ++d) {
    days[d < 6 ? 0 : 1].push_back({{static_cast<TokenId>(d % 4), 1}});
    const double a = 0.1 * (d % 5 + 1), b = (1 - a) * 0.3;
    theta.push_back({a, b, 1 - a - b});
  }
  const auto bow = daily_bow(vocab, day("2020-03-01"), days);
  const auto model = theta_model(bow, theta);
  for (auto mode : {Attribution::kHard, Attribution::kSoft}) {
    const auto tf = topic_frequency(model, bow, mode);
    for (std::size_t d = 0; d < 2; ++d) {
      const auto row = tf.values.row(d);
      EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), static_cast<double>(tf.documents[d]), 1e-6);
    }
  }
}

TEST(TopicFrequency, DtmConservation) {
  const std::size_t V = 12;
  std::vector<std::size_t> a = {0, 1, 2, 3, 4, 5}, b = {6, 7, 8, 9, 10, 11};
  PlantedOptions opts;
  opts.vocabulary_size = V;
  std::vector<PlantedSlice> slices;
  for (int t = 0; t < 6; ++t) slices.push_back({{support_topic(V, a, 0.8), support_topic(V, b, 0.8)}, static_cast<std::size_t>(t == 2 ? 0 : 15)});
  const auto bow = planted_corpus(opts, slices);
  DtmConfig cfg;
  cfg.num_topics = 2;
  cfg.slice_merge = 3;
  cfg.lda.iterations = 60;
  cfg.lda.burn_in = 30;
  const auto model = fit_dtm(bow.merge_slices(3), cfg);
  for (auto mode : {Attribution::kHard, Attribution::kSoft}) {
    const auto tf = topic_frequency(model, bow, mode);
    ASSERT_EQ(tf.days(), 6u);
    for (std::size_t d = 0; d < 6; ++d) {
      const auto row = tf.values.row(d);
      EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), static_cast<double>(tf.documents[d]), 1e-6);
    }
    EXPECT_EQ(tf.documents[2], 0u);
  }
}

TEST(TopWordsByPeriod, Examples) {
  const Vocabulary vocab({"masks", "home", "testing", "nurses"}, {1, 1, 1, 1});
  const PeriodSegmentation one({{"only", day("2020-03-01"), day("2020-03-02")}});
  const auto bow = daily_bow(vocab, day("2020-03-01"),
                             {{{{0, 1}, {1, 1}}, {{0, 2}}}, {{{0, 1}, {2, 1}}, {{1, 3}}}});
  const auto top = top_words_by_period(bow, one, 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].words, (std::vector<std::string>{"masks"}));
  EXPECT_EQ(top[0].documents, 4u);
  EXPECT_EQ(top_words_by_period(bow, one, 10)[0].words, (std::vector<std::string>{"masks", "home", "testing"}));

  const PeriodSegmentation two({{"p1", day("2020-03-01"), day("2020-03-01")},
                                {"p2", day("2020-03-02"), day("2020-03-02")},
                                {"p3", day("2020-03-03"), day("2020-03-04")}});
  const auto split = daily_bow(vocab, day("2020-03-01"), {{{{0, 1}, {1, 1}}}, {{{2, 1}, {3, 1}}}});
  const auto lists = top_words_by_period(split, two, 5);
  ASSERT_EQ(lists.size(), 3u);
  std::set<std::string> first(lists[0].words.begin(), lists[0].words.end());
  for (const auto& w : lists[1].words) EXPECT_FALSE(first.count(w));
  EXPECT_TRUE(lists[2].words.empty());
}

TEST(TopWordsByPeriod, AgencyFilter) {
  const Vocabulary vocab({"masks", "home"}, {1, 1});
  const PeriodSegmentation one({{"only", day("2020-03-01"), day("2020-03-01")}});
  const auto bow = daily_bow(vocab, day("2020-03-01"), {{{{0, 1}}, {{1, 1}}, {{1, 1}}}}, {"who", "fdot"});
  EXPECT_EQ(top_words_by_period(bow, one, 1)[0].words, (std::vector<std::string>{"home"}));
  EXPECT_EQ(top_words_by_period(bow, one, 1, std::string("who"))[0].words, (std::vector<std::string>{"masks"}));
}

TEST(Align, Examples) {
  const PeriodSegmentation seg({{"early", day("2020-03-01"), day("2020-03-02")}, {"late", day("2020-03-03"), day("2020-03-03")}});
  TopicFrequencySeries tf{day("2020-03-01"), Matrix(3, 2, 0.5), {1, 1, 1}, {"a b c", "d e f"}};
  const SentimentSeries s(day("2020-03-01"), {0.1, 0.2, 0.3}, {1, 1, 1});
  const IndicatorSeries full(day("2020-03-01"), {{1, 0}, {2, 1}, {3, 1}});
  const auto r = align(tf, s, full, seg, 2);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.sentiment_raw && row.sentiment_rolling && row.new_cases && row.new_deaths);
    for (const auto& t : row.topics) EXPECT_TRUE(t);
  }
  EXPECT_EQ(r.rows[2].period, "late");
  EXPECT_DOUBLE_EQ(*r.rows[1].sentiment_rolling, (0.1 + 0.2) / 2);

  const IndicatorSeries shorter(day("2020-03-01"), {{1, 0}, {2, 1}});
  const auto r2 = align(tf, s, shorter, seg);
  EXPECT_FALSE(r2.rows[2].new_cases);
  EXPECT_FALSE(r2.rows[2].new_deaths);
  EXPECT_TRUE(r2.rows[2].sentiment_raw);

  TopicFrequencySeries far{day("2021-01-01"), Matrix(1, 2, 0.5), {1}, {"a", "b"}};
  const SentimentSeries far_s(day("2021-01-01"), {0.1}, {1});
  const IndicatorSeries far_i(day("2021-01-01"), {{1, 1}});
  EXPECT_THROW(align(far, far_s, far_i, seg), DataError);
}

TEST(Align, IndicatorPeakLandsInSecondPeriod) {
  std::vector<DailyIndicator> days;
  for (Date d = day("2020-02-21"); d <= day("2020-06-06"); d += std::chrono::days(1))
    days.push_back(d == day("2020-04-10") ? DailyIndicator{40000, 2500} : DailyIndicator{100, 5});
  const IndicatorSeries ind(day("2020-02-21"), days);
  TopicFrequencySeries tf{day("2020-03-01"), Matrix(1, 1, 1.0), {1}, {"x"}};
  const SentimentSeries s(day("2020-03-01"), {0.0}, {1});
  const auto r = align(tf, s, ind, default_segmentation());
  ASSERT_EQ(r.rows.size(), 107u);
  const auto& row = r.rows[static_cast<std::size_t>((day("2020-04-10") - day("2020-02-21")).count())];
  EXPECT_EQ(row.date, day("2020-04-10"));
  EXPECT_EQ(row.period, "Beginning of the lockdown");
  EXPECT_EQ(row.new_cases, 40000);
  EXPECT_EQ(row.new_deaths, 2500);
}
