#include "crisiscomm/lda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crisiscomm/error.hpp"

namespace crisiscomm {

void LdaConfig::validate() const {
  if (num_topics < 1) throw ConfigError("number of topics must be >= 1");
  if (iterations <= burn_in) throw ConfigError("iterations must exceed burn_in");
  const double a = resolved_alpha();
  if (!std::isfinite(a) || a <= 0.0) throw ConfigError("alpha must be finite and positive");
  if (!std::isfinite(eta) || eta <= 0.0) throw ConfigError("eta must be finite and positive");
}

GibbsSampler::GibbsSampler(std::span<const BowDocument> documents, std::size_t vocabulary_size,
                           std::size_t num_topics, double alpha, double eta, std::uint64_t seed,
                           const Matrix* warm_start)
    : num_topics_(num_topics),
      vocab_size_(vocabulary_size),
      alpha_(alpha),
      eta_(eta),
      rng_(seed),
      doc_topic_(documents.size() * num_topics, 0),
      topic_word_(num_topics * vocabulary_size, 0),
      topic_total_(num_topics, 0),
      weights_(num_topics, 0.0) {
  if (warm_start && (warm_start->rows() != num_topics || warm_start->cols() != vocabulary_size))
    throw ConfigError("warm start phi has the wrong shape");

  doc_words_.reserve(documents.size());
  assignments_.reserve(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    std::vector<TokenId> words;
    for (const auto& tc : documents[d].counts) words.insert(words.end(), tc.count, tc.token);
    std::vector<std::uint32_t> z(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      const TokenId w = words[i];
      std::uint32_t k = 0;
      if (warm_start) {
        double total = 0.0;
        for (std::size_t t = 0; t < num_topics_; ++t) {
          total += (*warm_start)(t, w);
          weights_[t] = total;
        }
        const double u = uniform() * total;
        while (k + 1 < num_topics_ && weights_[k] <= u) ++k;
      } else {
        k = static_cast<std::uint32_t>(std::min<std::size_t>(num_topics_ - 1,
                                                             static_cast<std::size_t>(uniform() * num_topics_)));
      }
      z[i] = k;
      ++doc_topic_[d * num_topics_ + k];
      ++topic_word_[k * vocab_size_ + w];
      ++topic_total_[k];
    }
    doc_words_.push_back(std::move(words));
    assignments_.push_back(std::move(z));
  }
}

double GibbsSampler::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

void GibbsSampler::sweep() {
  const double v_eta = static_cast<double>(vocab_size_) * eta_;
  for (std::size_t d = 0; d < doc_words_.size(); ++d) {
    const auto& words = doc_words_[d];
    auto& z = assignments_[d];
    std::uint32_t* nd = &doc_topic_[d * num_topics_];
    for (std::size_t i = 0; i < words.size(); ++i) {
      const TokenId w = words[i];
      std::uint32_t k = z[i];
      --nd[k];
      --topic_word_[k * vocab_size_ + w];
      --topic_total_[k];

      double total = 0.0;
      for (std::size_t t = 0; t < num_topics_; ++t) {
        total += (nd[t] + alpha_) * (topic_word_[t * vocab_size_ + w] + eta_) / (topic_total_[t] + v_eta);
        weights_[t] = total;
      }
      const double u = uniform() * total;
      k = 0;
      while (k + 1 < num_topics_ && weights_[k] <= u) ++k;

      z[i] = k;
      ++nd[k];
      ++topic_word_[k * vocab_size_ + w];
      ++topic_total_[k];
    }
  }
}

void GibbsSampler::accumulate_phi(Matrix& phi) const {
  const double v_eta = static_cast<double>(vocab_size_) * eta_;
  for (std::size_t k = 0; k < num_topics_; ++k) {
    const double denom = topic_total_[k] + v_eta;
    for (std::size_t w = 0; w < vocab_size_; ++w) phi(k, w) += (topic_word_[k * vocab_size_ + w] + eta_) / denom;
  }
}

void GibbsSampler::accumulate_theta(Matrix& theta) const {
  const double k_alpha = static_cast<double>(num_topics_) * alpha_;
  for (std::size_t d = 0; d < doc_words_.size(); ++d) {
    const double denom = static_cast<double>(doc_words_[d].size()) + k_alpha;
    for (std::size_t k = 0; k < num_topics_; ++k) theta(d, k) += (doc_topic_[d * num_topics_ + k] + alpha_) / denom;
  }
}

namespace {

void normalize_rows(Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& x : row) x /= sum;
  }
}

}  // namespace

LdaModel fit_lda(std::span<const BowDocument> documents, std::size_t vocabulary_size, const LdaConfig& config,
                 const Matrix* warm_start, const GibbsObserver& observer) {
  config.validate();
  if (documents.empty()) throw DataError("cannot fit LDA on an empty corpus");
  std::size_t total_tokens = 0;
  for (const auto& d : documents) total_tokens += d.length();
  if (config.num_topics > total_tokens)
    throw DataError("K=" + std::to_string(config.num_topics) + " exceeds the token count " +
                    std::to_string(total_tokens));

  const std::size_t K = config.num_topics;
  const double alpha = config.resolved_alpha();
  GibbsSampler sampler(documents, vocabulary_size, K, alpha, config.eta, config.seed, warm_start);

  Matrix phi(K, vocabulary_size);
  Matrix theta(documents.size(), K);
  std::vector<double> mass(K, 0.0);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    sampler.sweep();
    if (observer) observer(sampler, it);
    if (it >= config.burn_in) {
      sampler.accumulate_phi(phi);
      sampler.accumulate_theta(theta);
      for (std::size_t k = 0; k < K; ++k) mass[k] += sampler.topic_total(k);
    }
  }
  const double samples = static_cast<double>(config.iterations - config.burn_in);
  for (double& m : mass) m /= samples;
  normalize_rows(phi);
  normalize_rows(theta);

  LdaModel model;
  model.num_topics = K;
  model.alpha = alpha;
  model.eta = config.eta;
  model.iterations = config.iterations;
  model.burn_in = config.burn_in;
  model.seed = config.seed;
  model.phi = std::move(phi);
  model.theta = std::move(theta);
  model.assignments = sampler.assignments();
  model.topic_token_mass = std::move(mass);
  return model;
}

LdaModel fit_lda(const BowCorpus& bow, const LdaConfig& config, const GibbsObserver& observer) {
  LdaModel model = fit_lda(bow.documents(), bow.vocabulary().size(), config, nullptr, observer);
  model.vocabulary_hash = bow.vocabulary().hash();
  return model;
}

std::vector<TokenId> top_word_ids(std::span<const double> distribution, std::size_t n) {
  std::vector<TokenId> ids(distribution.size());
  std::iota(ids.begin(), ids.end(), TokenId{0});
  n = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(),
                    [&](TokenId a, TokenId b) {
                      if (distribution[a] != distribution[b]) return distribution[a] > distribution[b];
                      return a < b;
                    });
  ids.resize(n);
  return ids;
}

std::vector<std::string> topic_top_words(const LdaModel& model, const Vocabulary& vocab, std::size_t topic,
                                         std::size_t n) {
  if (topic >= model.num_topics) throw ConfigError("topic index out of range");
  std::vector<std::string> words;
  for (TokenId id : top_word_ids(model.phi.row(topic), n)) words.push_back(vocab.token(id));
  return words;
}

std::size_t argmax_first(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::size_t dominant_topic(const LdaModel& model, std::size_t document) {
  if (document >= model.document_count()) throw ConfigError("document index out of range");
  return argmax_first(model.theta.row(document));
}

}  // namespace crisiscomm
