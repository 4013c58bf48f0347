#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "crisiscomm/matrix.hpp"
#include "crisiscomm/preprocess.hpp"

namespace crisiscomm {

struct LdaConfig {
  std::size_t num_topics = 10;
  // Symmetric document-topic prior; 50/K when unset.
  std::optional<double> alpha;
  double eta = 0.01;
  std::size_t iterations = 1000;
  std::size_t burn_in = 500;
  std::uint64_t seed = 1;

  double resolved_alpha() const { return alpha ? *alpha : 50.0 / static_cast<double>(num_topics); }
  // Throws ConfigError for K < 1, iterations <= burn_in, non-finite or
  // non-positive hyperparameters.
  void validate() const;

  bool operator==(const LdaConfig&) const = default;
};

struct LdaModel {
  std::size_t num_topics = 0;
  double alpha = 0.0;
  double eta = 0.0;
  std::size_t iterations = 0;
  std::size_t burn_in = 0;
  std::uint64_t seed = 0;
  std::uint64_t vocabulary_hash = 0;
  Matrix phi;    // K x V, rows on the simplex
  Matrix theta;  // D x K, rows on the simplex
  // Final-sweep topic of every token, grouped by document in BowDocument
  // order with each (token, count) pair expanded.
  std::vector<std::vector<std::uint32_t>> assignments;
  // Tokens assigned to each topic, averaged over the post-burn-in sweeps.
  std::vector<double> topic_token_mass;

  std::size_t vocabulary_size() const { return phi.cols(); }
  std::size_t document_count() const { return theta.rows(); }

  bool operator==(const LdaModel&) const = default;
};

// Collapsed Gibbs state for LDA. Exposed so that callers (and tests) can
// drive the chain sweep by sweep and inspect the count tables.
class GibbsSampler {
 public:
  // `warm_start`, when given (K x V, rows on the simplex), seeds the initial
  // assignments in proportion to phi[k][w] instead of uniformly.
  GibbsSampler(std::span<const BowDocument> documents, std::size_t vocabulary_size, std::size_t num_topics,
               double alpha, double eta, std::uint64_t seed, const Matrix* warm_start = nullptr);

  void sweep();

  std::size_t num_topics() const { return num_topics_; }
  std::size_t vocabulary_size() const { return vocab_size_; }
  std::size_t document_count() const { return doc_words_.size(); }
  std::size_t document_length(std::size_t d) const { return doc_words_[d].size(); }

  std::uint32_t doc_topic(std::size_t d, std::size_t k) const { return doc_topic_[d * num_topics_ + k]; }
  std::uint32_t topic_word(std::size_t k, std::size_t w) const { return topic_word_[k * vocab_size_ + w]; }
  std::uint32_t topic_total(std::size_t k) const { return topic_total_[k]; }
  const std::vector<std::vector<std::uint32_t>>& assignments() const { return assignments_; }
  const std::vector<std::vector<TokenId>>& words() const { return doc_words_; }

  // Point estimates from the current counts.
  void accumulate_phi(Matrix& phi) const;
  void accumulate_theta(Matrix& theta) const;

 private:
  double uniform();

  std::size_t num_topics_;
  std::size_t vocab_size_;
  double alpha_;
  double eta_;
  std::mt19937_64 rng_;
  std::vector<std::vector<TokenId>> doc_words_;
  std::vector<std::vector<std::uint32_t>> assignments_;
  std::vector<std::uint32_t> doc_topic_;
  std::vector<std::uint32_t> topic_word_;
  std::vector<std::uint32_t> topic_total_;
  std::vector<double> weights_;
};

// Called after every sweep with the 0-based sweep index.
using GibbsObserver = std::function<void(const GibbsSampler&, std::size_t)>;

// Collapsed Gibbs LDA. phi and theta are averages of the per-sweep
// posterior-mean estimates over sweeps [burn_in, iterations). Throws
// ConfigError for invalid configs and DataError when the corpus is empty or
// K exceeds the token count.
LdaModel fit_lda(std::span<const BowDocument> documents, std::size_t vocabulary_size, const LdaConfig& config,
                 const Matrix* warm_start = nullptr, const GibbsObserver& observer = {});
LdaModel fit_lda(const BowCorpus& bow, const LdaConfig& config, const GibbsObserver& observer = {});

// Ids of the n highest-probability words in a row of phi, ties by lower id.
std::vector<TokenId> top_word_ids(std::span<const double> distribution, std::size_t n);

std::vector<std::string> topic_top_words(const LdaModel& model, const Vocabulary& vocab, std::size_t topic,
                                         std::size_t n);

// Argmax of theta[document]; ties go to the lower topic id.
std::size_t dominant_topic(const LdaModel& model, std::size_t document);
std::size_t argmax_first(std::span<const double> values);

// Per-topic NPMI coherence over the top `top_n` words, using document-level
// co-occurrence. Every pair's 2x2 presence table gets +1 in each cell, so
// with D documents:
//   p(i,j) = (D_ij + 1) / (D + 4),  p(i) = (D_i + 2) / (D + 4)
//   npmi   = log(p(i,j) / (p(i) p(j))) / -log p(i,j)
// A topic's score is the mean over its word pairs; scores lie in (-1, 1).
std::vector<double> coherence(const LdaModel& model, const BowCorpus& bow, std::size_t top_n = 10);
double npmi(std::size_t docs_with_both, std::size_t docs_with_i, std::size_t docs_with_j, std::size_t total_docs);

struct CoherenceEntry {
  std::size_t num_topics = 0;
  double mean_coherence = 0.0;
};

struct CoherenceReport {
  std::vector<CoherenceEntry> entries;  // ascending K
  std::size_t selected_k = 0;
};

struct KSelection {
  CoherenceReport report;
  LdaModel model;  // the fit for selected_k
};

// Fits one model per K (every fit uses base.seed), picks the highest mean
// coherence, smaller K on ties. A single-element grid is fit directly (its
// coherence is still reported).
KSelection select_k(const BowCorpus& bow, std::span<const std::size_t> k_grid, const LdaConfig& base);

// Argmax with smaller-K tie break over an already scored grid.
std::size_t pick_k(std::span<const CoherenceEntry> entries);

}  // namespace crisiscomm
