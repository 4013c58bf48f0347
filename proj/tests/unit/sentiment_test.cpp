#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "crisiscomm/error.hpp"
#include "crisiscomm/sentiment.hpp"
#include "support/builders.hpp"

using namespace crisiscomm;
using namespace crisiscomm::testing;
using Values = std::vector<std::optional<double>>;

namespace {

const SentimentLexicon& lexicon() {
  static const SentimentLexicon lex({{"good", 1.0}, {"bad", -1.0}, {"calm", 0.5}});
  return lex;
}

SentimentSeries series(Values v) {
  std::vector<std::size_t> counts;
  for (const auto& x : v) counts.push_back(x ? 1 : 0);
  return SentimentSeries(day("2020-03-01"), std::move(v), std::move(counts));
}

}  // namespace

TEST(ScoreText, Examples) {
  EXPECT_EQ(score_text("", lexicon()), 0.0);
  EXPECT_DOUBLE_EQ(score_text("good good bad", lexicon()), 1.0 / 3.0);
  EXPECT_EQ(score_text("shelter update county", lexicon()), 0.0);
  EXPECT_DOUBLE_EQ(score_text("GOOD news, bad news https://t.co/good", lexicon()), 0.0);
}

TEST(ScoreText, Negation) {
  SentimentOptions neg;
  neg.negation = true;
  EXPECT_EQ(score_text("not good", lexicon(), Tokenizer{}, neg), -1.0);
  EXPECT_EQ(score_text("not good", lexicon()), 1.0);
  EXPECT_EQ(score_text("good not", lexicon(), Tokenizer{}, neg), 1.0);
}

TEST(ScoreText, Bounded) {
  std::mt19937_64 rng(2);
  const std::vector<std::string> words = {"good", "bad", "calm", "update", "not", "county"};
  SentimentOptions neg;
  neg.negation = true;
  for (int i = 0; i < 500; ++i) {
    std::string text;
    for (std::size_t n = rng() % 12; n > 0; --n) text += words[rng() % words.size()] + " ";
    const double s = score_text(text, lexicon(), Tokenizer{}, neg);
    EXPECT_GE(s, -1.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(Lexicon, LoadAndValidate) {
  std::istringstream ok("# header\ngood\t3\nBAD\t-5\n\n");
  const auto lex = load_lexicon(ok);
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_DOUBLE_EQ(*lex.valence("good"), 0.6);
  EXPECT_DOUBLE_EQ(*lex.valence("bad"), -1.0);
  EXPECT_FALSE(lex.valence("calm"));
  std::istringstream range("good\t6\n");
  EXPECT_THROW(load_lexicon(range), DataError);
  std::istringstream garbage("good three\n");
  EXPECT_THROW(load_lexicon(garbage), DataError);
  EXPECT_THROW(SentimentLexicon({{"x", 1.5}}), DataError);
}

TEST(DailySentiment, Examples) {
  const Corpus c("cdc", {tweet("1", "2020-03-01T10:00:00Z", "good calm"), tweet("2", "2020-03-02T10:00:00Z", "good"),
                         tweet("3", "2020-03-02T11:00:00Z", "bad"), tweet("4", "2020-03-04T11:00:00Z", "bad")});
  const auto s = daily_sentiment(c, lexicon());
  ASSERT_EQ(s.size(), 4u);
  EXPECT_DOUBLE_EQ(*s.at(day("2020-03-01")), 0.75);
  EXPECT_EQ(s.counts()[0], 1u);
  EXPECT_EQ(*s.at(day("2020-03-02")), 0.0);
  EXPECT_EQ(s.counts()[1], 2u);
  EXPECT_FALSE(s.at(day("2020-03-03")));
  EXPECT_EQ(s.counts()[2], 0u);
  EXPECT_EQ(*s.at(day("2020-03-04")), -1.0);
  EXPECT_FALSE(s.at(day("2020-03-05")));
}

TEST(RollingMean, Examples) {
  const auto base = series({1.0, 2.0, 3.0});
  EXPECT_EQ(rolling_mean(base, 1), base);
  EXPECT_EQ(rolling_mean(base, 2).values(), (Values{1.0, 1.5, 2.5}));
  EXPECT_EQ(rolling_mean(series({1.0, std::nullopt, 3.0}), 2).values(), (Values{1.0, 1.0, 3.0}));
  EXPECT_EQ(rolling_mean(series({std::nullopt, std::nullopt, 3.0}), 2).values(),
            (Values{std::nullopt, std::nullopt, 3.0}));
  EXPECT_THROW(rolling_mean(base, 0), ConfigError);
}

TEST(RollingMean, ShiftEquivariantAndBounded) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    Values v, shifted;
    for (int d = 0; d < 30; ++d) {
      if (rng() % 4 == 0) {
        v.push_back(std::nullopt), shifted.push_back(std::nullopt);
      } else {
        const double x = unit(rng);
        v.push_back(x), shifted.push_back(x + 0.25);
      }
    }
    const std::size_t w = 1 + rng() % 9;
    const auto a = rolling_mean(series(v), w).values();
    const auto b = rolling_mean(series(shifted), w).values();
    for (std::size_t d = 0; d < a.size(); ++d) {
      ASSERT_EQ(a[d].has_value(), b[d].has_value());
      if (a[d]) {
        EXPECT_NEAR(*b[d], *a[d] + 0.25, 1e-12);
        EXPECT_LE(std::abs(*a[d]), 0.5);
      }
    }
  }
}

TEST(SentimentCsv, RoundTrip) {
  const SentimentSeries s(day("2020-03-01"), {0.1, std::nullopt, -1.0 / 3.0}, {2, 0, 3});
  std::ostringstream out;
  write_sentiment(s, out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "date,tweet_count,mean_score");
  EXPECT_NE(out.str().find("2020-03-02,0,\n"), std::string::npos);
  std::istringstream in(out.str());
  EXPECT_EQ(read_sentiment(in), s);
}
