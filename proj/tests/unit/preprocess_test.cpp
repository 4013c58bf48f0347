#include <gtest/gtest.h>

#include <map>
#include <random>
#include <sstream>

#include "crisiscomm/error.hpp"
#include "crisiscomm/preprocess.hpp"
#include "support/builders.hpp"

using namespace crisiscomm;
using namespace crisiscomm::testing;
using Tokens = std::vector<std::string>;

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize(""), Tokens{});
  EXPECT_EQ(tokenize("Wear masks! https://t.co/x @WHO #COVID19"), (Tokens{"wear", "masks", "covid19"}));
  EXPECT_EQ(tokenize("Social distancing, social distancing."),
            (Tokens{"social", "distancing", "social", "distancing"}));
}

TEST(Tokenize, StopwordsShortTokensAndUnicode) {
  EXPECT_EQ(tokenize("RT the and of a it www.cdc.gov/covid"), Tokens{});
  EXPECT_EQ(tokenize("Café CAFÉ"), (Tokens{"café", "café"}));
  const Tokenizer keep_all(Stoplist{}, TokenizerOptions{false, 1});
  EXPECT_EQ(keep_all("The A"), (Tokens{"the", "a"}));
  EXPECT_EQ(Tokenizer().unfiltered("not good"), (Tokens{"not", "good"}));
  const Tokenizer stem(default_stoplist(), TokenizerOptions{true, 3});
  EXPECT_EQ(stem("testing masks"), (Tokens{"test", "mask"}));
}

TEST(Vocabulary, Examples) {
  const std::vector<Tokens> tiny = {{"a-token"}, {"a-token"}, {"b-token"}};
  EXPECT_THROW(build_vocabulary(tiny, 2), DataError);
  EXPECT_THROW(build_vocabulary(tiny, 0), ConfigError);

  const std::vector<Tokens> docs = {{"masks", "home"}, {"masks"}, {"home", "masks"}};
  const auto v = build_vocabulary(docs, 2);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v.id("masks"), 0u);
  EXPECT_EQ(v.id("home"), 1u);
  EXPECT_EQ(v.document_frequency(0), 3u);
  EXPECT_EQ(v.document_frequency(1), 2u);
  EXPECT_EQ(build_vocabulary(tiny, 1).size(), 2u);
}

TEST(Vocabulary, MinDfIsMonotone) {
  std::mt19937_64 rng(5);
  std::vector<Tokens> docs(60);
  for (auto& d : docs)
    for (int i = 0; i < 8; ++i) d.push_back("tok" + std::to_string(rng() % 40 < 20 ? rng() % 5 : rng() % 40));
  std::size_t previous = SIZE_MAX;
  for (std::size_t min_df = 1; min_df <= 12; ++min_df) {
    const auto v = build_vocabulary(docs, min_df);
    EXPECT_LE(v.size(), previous);
    previous = v.size();
    for (std::size_t i = 1; i < v.size(); ++i) {
      EXPECT_GE(v.document_frequency(i - 1), v.document_frequency(i));
      if (v.document_frequency(i - 1) == v.document_frequency(i)) EXPECT_LT(v.token(i - 1), v.token(i));
    }
  }
  EXPECT_EQ(default_min_df(999), 2u);
  EXPECT_EQ(default_min_df(1000), 5u);
}

TEST(Vocabulary, FileRoundTrip) {
  const std::vector<Tokens> docs = {{"masks", "home"}, {"masks"}, {"home", "masks"}};
  const auto v = build_vocabulary(docs, 1);
  std::ostringstream out;
  write_vocabulary(v, out);
  std::istringstream in(out.str());
  const auto back = read_vocabulary(in);
  EXPECT_EQ(back, v);
  EXPECT_EQ(back.hash(), v.hash());
}

TEST(ToBow, CountsAndDrops) {
  const Vocabulary vocab({"masks", "home"}, {3, 2});
  const Corpus c("cdc", {tweet("1", "2020-03-01T10:00:00Z", "masks masks home"),
                         tweet("2", "2020-03-01T11:00:00Z", "nothing relevant"),
                         tweet("3", "2020-03-03T11:00:00Z", "home")});
  const auto bow = to_bow(c, vocab);
  ASSERT_EQ(bow.size(), 2u);
  EXPECT_EQ(bow.dropped(), 1u);
  EXPECT_EQ(bow.documents()[0].counts, (std::vector<TokenCount>{{0, 2}, {1, 1}}));
  EXPECT_EQ(bow.documents()[0].source_id, "1");
  ASSERT_EQ(bow.slices().size(), 3u);
  EXPECT_EQ(bow.slices()[0].size(), 1u);
  EXPECT_TRUE(bow.slices()[1].empty());
  EXPECT_EQ(bow.slices()[2].size(), 1u);
  EXPECT_EQ(bow.total_tokens(), 4u);
}

TEST(ToBow, PartitionAndRoundTrip) {
  std::mt19937_64 rng(11);
  const Tokens words = {"masks", "home", "testing", "vaccine", "nurses", "supplies"};
  std::vector<TweetRecord> records;
  for (int i = 0; i < 80; ++i) {
    std::string text;
    for (int j = 0; j < 1 + static_cast<int>(rng() % 6); ++j) text += words[rng() % words.size()] + " ";
    records.push_back({std::to_string(i), at("2020-03-01T00:00:00Z") + std::chrono::hours(rng() % 200), "cdc", text});
  }
  const Corpus c("cdc", records);
  const auto bow = build_bow(c, 1);
  EXPECT_EQ(bow.size(), c.size());
  std::size_t covered = 0;
  for (const auto& s : bow.slices()) covered += s.size();
  EXPECT_EQ(covered, bow.size());
  const Tokenizer tok;
  for (const auto& doc : bow.documents()) {
    const auto& rec = *std::find_if(c.records().begin(), c.records().end(),
                                    [&](const TweetRecord& r) { return r.id == doc.source_id; });
    std::map<std::string, std::uint32_t> expected;
    for (const auto& t : tok(rec.text)) ++expected[t];
    std::map<std::string, std::uint32_t> decoded;
    for (const auto& tc : doc.counts) decoded[bow.vocabulary().token(tc.token)] += tc.count;
    EXPECT_EQ(decoded, expected);
  }
}

TEST(BowCorpus, MergeSlices) {
  const Vocabulary vocab({"masks", "home"}, {1, 1});
  std::vector<BowDocument> docs;
  std::vector<BowSlice> slices;
  for (int d = 0; d < 10; ++d) {
    const std::size_t begin = docs.size();
    if (d % 3 != 1) docs.push_back({std::to_string(d), "cdc", at("2020-03-01T00:00:00Z") + std::chrono::days(d), {{0, 1}}});
    slices.push_back({day("2020-03-01") + std::chrono::days(d), begin, docs.size()});
  }
  const BowCorpus bow(vocab, docs, slices);
  const auto weekly = bow.merge_slices(7);
  ASSERT_EQ(weekly.slices().size(), 2u);
  EXPECT_EQ(weekly.slices()[1].date, day("2020-03-08"));
  EXPECT_EQ(weekly.slices()[0].size() + weekly.slices()[1].size(), bow.size());
  EXPECT_EQ(bow.merge_slices(1), bow);
  EXPECT_THROW(bow.merge_slices(0), ConfigError);
}
