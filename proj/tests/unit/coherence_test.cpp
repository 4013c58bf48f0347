#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "crisiscomm/lda.hpp"
#include "support/planted.hpp"

using namespace crisiscomm;
using namespace crisiscomm::testing;

namespace {

LdaModel model_with_phi(const std::vector<std::vector<double>>& rows) {
  LdaModel m;
  m.num_topics = rows.size();
  m.phi = Matrix(rows.size(), rows[0].size());
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t w = 0; w < rows[k].size(); ++w) m.phi(k, w) = rows[k][w];
  return m;
}

std::vector<double> block(std::size_t V, std::size_t from, std::size_t to) {
  std::vector<double> p(V, 1e-6);
  for (std::size_t w = from; w < to; ++w) p[w] = 1.0 + 0.01 * static_cast<double>(to - w);
  return p;
}

// Smoothed NPMI straight from presence counts.
double reference_npmi(double dij, double di, double dj, double D) {
  const double pij = (dij + 1) / (D + 4), pi = (di + 2) / (D + 4), pj = (dj + 2) / (D + 4);
  return std::log(pij / (pi * pj)) / -std::log(pij);
}

}  // namespace

TEST(Npmi, AlwaysCooccurringTopicWords) {
  std::vector<std::vector<std::size_t>> docs;
  for (std::size_t d = 0; d < 100; ++d) {
    std::vector<std::size_t> words;
    for (std::size_t w = 0; w < 10; ++w) words.push_back(d < 50 ? w : w + 10);
    docs.push_back(words);
  }
  const auto bow = corpus_of(20, docs);
  const auto scores = coherence(model_with_phi({block(20, 0, 10), block(20, 10, 20)}), bow);
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_GT(scores[0], 0.9);
  EXPECT_GT(scores[1], 0.9);
  EXPECT_NEAR(scores[0], reference_npmi(50, 50, 50, 100), 1e-12);
  // Smoothing vanishes as the corpus grows.
  EXPECT_GT(npmi(50000, 50000, 50000, 100000), 0.9999);
}

TEST(Npmi, NeverCooccurringWordsScoreNegative) {
  std::vector<std::vector<std::size_t>> docs;
  for (std::size_t d = 0; d < 100; ++d) docs.push_back({d % 10});
  const auto bow = corpus_of(10, docs);
  const auto scores = coherence(model_with_phi({block(10, 0, 10)}), bow);
  EXPECT_LT(scores[0], 0.0);
  EXPECT_LT(npmi(0, 50, 50, 100), 0.0);
}

TEST(Npmi, SingleDocumentIsSymmetric) {
  std::vector<std::size_t> all(24);
  std::iota(all.begin(), all.end(), 0);
  const auto bow = corpus_of(24, {all});
  const auto scores = coherence(model_with_phi({block(24, 0, 10), block(24, 10, 20), block(24, 5, 15)}), bow);
  EXPECT_EQ(scores[0], scores[1]);
  EXPECT_EQ(scores[1], scores[2]);
  // 45 identical pairs; the mean carries one rounding step.
  EXPECT_NEAR(scores[0], reference_npmi(1, 1, 1, 1), 1e-15);
}

TEST(Npmi, MatchesDirectCountingOnRandomModels) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t V = 15 + rng() % 20, D = 5 + rng() % 60;
    std::vector<std::vector<std::size_t>> docs(D);
    for (auto& d : docs)
      for (std::size_t n = 0, len = 1 + rng() % 12; n < len; ++n) d.push_back(rng() % V);
    const auto bow = corpus_of(V, docs);
    std::vector<std::vector<double>> rows(3, std::vector<double>(V));
    for (auto& r : rows)
      for (auto& v : r) v = std::floor(unit(rng) * 8);  // coarse values force ties
    const auto scores = coherence(model_with_phi(rows), bow);
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<std::size_t> ids(V);
      std::iota(ids.begin(), ids.end(), 0);
      std::stable_sort(ids.begin(), ids.end(), [&](auto a, auto b) { return rows[k][a] > rows[k][b]; });
      ids.resize(10);
      std::vector<std::set<std::size_t>> present(V);
      for (std::size_t d = 0; d < D; ++d)
        for (auto w : docs[d]) present[w].insert(d);
      double sum = 0;
      int pairs = 0;
      for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
          std::size_t both = 0;
          for (auto d : present[ids[a]]) both += present[ids[b]].count(d);
          sum += reference_npmi(both, present[ids[a]].size(), present[ids[b]].size(), D);
          ++pairs;
        }
      EXPECT_NEAR(scores[k], sum / pairs, 1e-12);
    }
  }
}

TEST(SelectK, TieBreakAndSingleGrid) {
  const std::vector<CoherenceEntry> tied = {{5, 0.4}, {2, 0.4}, {3, 0.1}};
  EXPECT_EQ(pick_k(tied), 2u);
  const std::vector<CoherenceEntry> clear = {{2, 0.1}, {3, 0.4}, {5, 0.3}};
  EXPECT_EQ(pick_k(clear), 3u);

  std::vector<std::vector<std::size_t>> docs;
  for (std::size_t d = 0; d < 30; ++d) docs.push_back({d % 6, (d + 1) % 6, (d + 2) % 6});
  const auto bow = corpus_of(6, docs);
  LdaConfig base;
  base.iterations = 50;
  base.burn_in = 25;
  const std::vector<std::size_t> grid = {2};
  const auto sel = select_k(bow, grid, base);
  EXPECT_EQ(sel.report.selected_k, 2u);
  ASSERT_EQ(sel.report.entries.size(), 1u);
  EXPECT_EQ(sel.model.num_topics, 2u);
}

TEST(SelectK, ModelMatchesDirectFit) {
  std::vector<std::vector<std::size_t>> docs;
  for (std::size_t d = 0; d < 40; ++d) docs.push_back({d % 8, (d * 3) % 8, (d + 5) % 8, d % 3});
  const auto bow = corpus_of(8, docs);
  LdaConfig base;
  base.alpha = 0.2;
  base.iterations = 60;
  base.burn_in = 30;
  base.seed = 4;
  const std::vector<std::size_t> grid = {2, 3, 4};
  const auto sel = select_k(bow, grid, base);
  ASSERT_EQ(sel.report.entries.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    auto cfg = base;
    cfg.num_topics = grid[i];
    const auto fit = fit_lda(bow, cfg);
    const auto sc = coherence(fit, bow);
    EXPECT_DOUBLE_EQ(sel.report.entries[i].mean_coherence, std::accumulate(sc.begin(), sc.end(), 0.0) / sc.size());
    if (grid[i] == sel.report.selected_k) EXPECT_EQ(fit, sel.model);
  }
}
