#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crisiscomm/calendar.hpp"
#include "crisiscomm/lda.hpp"
#include "crisiscomm/logistic_normal.hpp"
#include "crisiscomm/matrix.hpp"
#include "crisiscomm/preprocess.hpp"

namespace crisiscomm {

struct DtmConfig {
  std::size_t num_topics = 10;
  // Chain variance of the random walk on natural parameters.
  double sigma2 = 0.005;
  // Pseudo-observation variance is max(obs_scale / (topic tokens + 1), obs_variance_floor).
  double obs_scale = 1.0;
  double obs_variance_floor = 1e-4;
  double probability_floor = 1e-9;
  double prior_mean = 0.0;
  double prior_variance = 1e6;
  // Consecutive daily slices merged into one time step (7 = weekly).
  std::size_t slice_merge = 1;
  // Per-slice Gibbs settings; num_topics is taken from above and the seed of
  // slice t is lda.seed + t.
  LdaConfig lda;

  void validate() const;

  bool operator==(const DtmConfig&) const = default;
};

// Per-slice, per-topic smoothed natural parameters plus the smoothed
// logistic-normal mean of topic proportions.
struct DtmModel {
  std::size_t num_topics = 0;
  std::size_t vocabulary_size = 0;
  std::uint64_t vocabulary_hash = 0;
  DtmConfig config;
  std::vector<Date> slice_dates;                          // T, strictly increasing
  std::vector<bool> observed;                             // T
  std::vector<std::vector<NaturalParams>> beta;           // T x K x V
  std::vector<std::vector<std::vector<double>>> beta_variance;  // T x K x V
  std::vector<NaturalParams> alpha;                       // T x K
  std::vector<std::vector<double>> alpha_variance;        // T x K
  std::vector<std::vector<double>> topic_token_mass;      // T x K, 0 on unobserved slices

  std::size_t slices() const { return slice_dates.size(); }
  std::vector<double> topic_distribution(std::size_t slice, std::size_t topic) const;
  std::vector<double> topic_proportions(std::size_t slice) const;
  // Slice whose date range contains `d` (the last slice starting on or before d).
  std::size_t slice_of(Date d) const;

  bool operator==(const DtmModel&) const = default;
};

// Permutation p with p[k] = the topic of `phi` that continues reference
// topic k, maximizing total row cosine.
std::vector<std::size_t> align_to_reference(const Matrix& reference, const Matrix& phi);

// Aligns each slice's topics to the previous (already aligned) slice.
// Returns one permutation per slice; the first is the identity.
std::vector<std::vector<std::size_t>> align_topic_sequence(std::span<const Matrix> per_slice_phi);

Matrix permute_rows(const Matrix& m, std::span<const std::size_t> perm);

// Two-stage estimator: per-slice collapsed-Gibbs LDA warm-started from the
// previous slice, Hungarian alignment of consecutive slices, then Kalman
// smoothing of every (topic, word) natural-parameter chain and of the
// topic-proportion chain. Slices that are empty or hold fewer tokens than K
// are unobserved. Throws DataError when no slice can be fit.
DtmModel fit_dtm(const BowCorpus& bow, const DtmConfig& config);

// Top-n words of topic k at every slice.
std::vector<std::vector<std::string>> topic_trajectory(const DtmModel& model, const Vocabulary& vocab,
                                                       std::size_t topic, std::size_t n);

}  // namespace crisiscomm
