#include <algorithm>
#include <cmath>
#include <future>
#include <set>

#include "crisiscomm/error.hpp"
#include "crisiscomm/lda.hpp"

namespace crisiscomm {

double npmi(std::size_t docs_with_both, std::size_t docs_with_i, std::size_t docs_with_j, std::size_t total_docs) {
  const double n = static_cast<double>(total_docs) + 4.0;
  const double p_ij = (static_cast<double>(docs_with_both) + 1.0) / n;
  const double p_i = (static_cast<double>(docs_with_i) + 2.0) / n;
  const double p_j = (static_cast<double>(docs_with_j) + 2.0) / n;
  return std::log(p_ij / (p_i * p_j)) / -std::log(p_ij);
}

std::vector<double> coherence(const LdaModel& model, const BowCorpus& bow, std::size_t top_n) {
  if (model.vocabulary_size() != bow.vocabulary().size())
    throw ConfigError("model and corpus vocabularies differ in size");
  const std::size_t D = bow.size();

  // Document sets per word, restricted to words that are in some top list.
  std::vector<std::vector<TokenId>> tops;
  std::set<TokenId> needed;
  for (std::size_t k = 0; k < model.num_topics; ++k) {
    tops.push_back(top_word_ids(model.phi.row(k), top_n));
    needed.insert(tops.back().begin(), tops.back().end());
  }
  std::vector<std::vector<std::uint32_t>> postings(model.vocabulary_size());
  for (std::size_t d = 0; d < D; ++d) {
    for (const auto& tc : bow.documents()[d].counts) {
      if (needed.count(tc.token)) postings[tc.token].push_back(static_cast<std::uint32_t>(d));
    }
  }
  auto both = [&](TokenId a, TokenId b) {
    const auto& pa = postings[a];
    const auto& pb = postings[b];
    std::size_t i = 0, j = 0, n = 0;
    while (i < pa.size() && j < pb.size()) {
      if (pa[i] < pb[j]) {
        ++i;
      } else if (pb[j] < pa[i]) {
        ++j;
      } else {
        ++n, ++i, ++j;
      }
    }
    return n;
  };

  std::vector<double> scores;
  scores.reserve(tops.size());
  for (const auto& top : tops) {
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < top.size(); ++a) {
      for (std::size_t b = a + 1; b < top.size(); ++b) {
        sum += npmi(both(top[a], top[b]), postings[top[a]].size(), postings[top[b]].size(), D);
        ++pairs;
      }
    }
    scores.push_back(pairs ? sum / static_cast<double>(pairs) : 0.0);
  }
  return scores;
}

std::size_t pick_k(std::span<const CoherenceEntry> entries) {
  if (entries.empty()) throw ConfigError("empty coherence grid");
  const CoherenceEntry* best = &entries.front();
  for (const auto& e : entries) {
    if (e.mean_coherence > best->mean_coherence ||
        (e.mean_coherence == best->mean_coherence && e.num_topics < best->num_topics))
      best = &e;
  }
  return best->num_topics;
}

KSelection select_k(const BowCorpus& bow, std::span<const std::size_t> k_grid, const LdaConfig& base) {
  if (k_grid.empty()) throw ConfigError("k_grid must not be empty");
  std::vector<std::size_t> grid(k_grid.begin(), k_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (std::size_t k : grid) {
    if (k < 2 && grid.size() > 1) throw ConfigError("every K in the selection grid must be >= 2");
  }

  struct Fit {
    LdaModel model;
    double mean = 0.0;
  };
  std::vector<std::future<Fit>> jobs;
  for (std::size_t k : grid) {
    LdaConfig cfg = base;
    cfg.num_topics = k;
    jobs.push_back(std::async(std::launch::async, [&bow, cfg] {
      Fit fit{fit_lda(bow, cfg), 0.0};
      auto scores = coherence(fit.model, bow);
      double sum = 0.0;
      for (double s : scores) sum += s;
      fit.mean = sum / static_cast<double>(scores.size());
      return fit;
    }));
  }

  KSelection out;
  std::vector<LdaModel> models;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Fit fit = jobs[i].get();
    out.report.entries.push_back({grid[i], fit.mean});
    models.push_back(std::move(fit.model));
  }
  out.report.selected_k = pick_k(out.report.entries);
  for (auto& m : models) {
    if (m.num_topics == out.report.selected_k) out.model = std::move(m);
  }
  return out;
}

}  // namespace crisiscomm
