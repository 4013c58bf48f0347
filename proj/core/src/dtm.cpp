#include "crisiscomm/dtm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crisiscomm/assignment.hpp"
#include "crisiscomm/error.hpp"
#include "crisiscomm/kalman.hpp"

namespace crisiscomm {

void DtmConfig::validate() const {
  if (num_topics < 2) throw ConfigError("DTM needs K >= 2");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ConfigError("sigma2 must be finite and positive");
  if (!(obs_scale > 0.0) || !(obs_variance_floor > 0.0)) throw ConfigError("observation variance must be positive");
  if (!(probability_floor > 0.0) || probability_floor >= 1.0) throw ConfigError("probability floor must be in (0,1)");
  if (!(prior_variance > 0.0) || !std::isfinite(prior_variance)) throw ConfigError("prior variance must be positive");
  if (slice_merge < 1) throw ConfigError("slice merge factor must be >= 1");
  LdaConfig per_slice = lda;
  per_slice.num_topics = num_topics;
  per_slice.validate();
}

std::vector<double> DtmModel::topic_distribution(std::size_t slice, std::size_t topic) const {
  return natural_to_mean(beta.at(slice).at(topic));
}

std::vector<double> DtmModel::topic_proportions(std::size_t slice) const {
  return natural_to_mean(alpha.at(slice));
}

std::size_t DtmModel::slice_of(Date d) const {
  if (slice_dates.empty() || d < slice_dates.front()) throw OutOfWindowError("date precedes the first DTM slice");
  auto it = std::upper_bound(slice_dates.begin(), slice_dates.end(), d);
  return static_cast<std::size_t>(it - slice_dates.begin()) - 1;
}

std::vector<std::size_t> align_to_reference(const Matrix& reference, const Matrix& phi) {
  return max_weight_assignment(row_cosine(reference, phi));
}

std::vector<std::vector<std::size_t>> align_topic_sequence(std::span<const Matrix> per_slice_phi) {
  std::vector<std::vector<std::size_t>> perms;
  Matrix previous;
  for (std::size_t t = 0; t < per_slice_phi.size(); ++t) {
    std::vector<std::size_t> perm(per_slice_phi[t].rows());
    if (t == 0) {
      std::iota(perm.begin(), perm.end(), std::size_t{0});
    } else {
      perm = align_to_reference(previous, per_slice_phi[t]);
    }
    previous = permute_rows(per_slice_phi[t], perm);
    perms.push_back(std::move(perm));
  }
  return perms;
}

Matrix permute_rows(const Matrix& m, std::span<const std::size_t> perm) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row(perm[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

namespace {

struct SliceFit {
  bool observed = false;
  Matrix phi;                        // aligned, K x V
  std::vector<double> proportions;   // aligned mean theta over the slice, K
  std::vector<double> topic_mass;    // aligned, K
  std::size_t documents = 0;
};

double observation_variance(const DtmConfig& cfg, double count) {
  return std::max(cfg.obs_scale / (count + 1.0), cfg.obs_variance_floor);
}

}  // namespace

DtmModel fit_dtm(const BowCorpus& daily, const DtmConfig& config) {
  config.validate();
  const BowCorpus bow = daily.merge_slices(config.slice_merge);
  const std::size_t K = config.num_topics;
  const std::size_t V = bow.vocabulary().size();
  const std::size_t T = bow.slices().size();
  if (T == 0) throw DataError("DTM input has no slices");

  std::vector<SliceFit> fits(T);
  const Matrix* previous = nullptr;
  std::span<const BowDocument> all_docs(bow.documents());
  for (std::size_t t = 0; t < T; ++t) {
    const auto& slice = bow.slices()[t];
    auto docs = all_docs.subspan(slice.begin, slice.size());
    std::size_t tokens = 0;
    for (const auto& d : docs) tokens += d.length();
    if (docs.empty() || tokens < K) continue;

    LdaConfig cfg = config.lda;
    cfg.num_topics = K;
    cfg.seed = config.lda.seed + t;
    LdaModel lda = fit_lda(docs, V, cfg, previous);

    std::vector<std::size_t> perm(K);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (previous) perm = align_to_reference(*previous, lda.phi);

    SliceFit& fit = fits[t];
    fit.observed = true;
    fit.documents = docs.size();
    fit.phi = permute_rows(lda.phi, perm);
    fit.proportions.assign(K, 0.0);
    fit.topic_mass.assign(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      fit.topic_mass[k] = lda.topic_token_mass[perm[k]];
      for (std::size_t d = 0; d < docs.size(); ++d) fit.proportions[k] += lda.theta(d, perm[k]);
      fit.proportions[k] /= static_cast<double>(docs.size());
    }
    previous = &fit.phi;
  }
  if (std::none_of(fits.begin(), fits.end(), [](const SliceFit& f) { return f.observed; }))
    throw DataError("no slice has enough tokens to fit " + std::to_string(K) + " topics");

  DtmModel model;
  model.num_topics = K;
  model.vocabulary_size = V;
  model.vocabulary_hash = bow.vocabulary().hash();
  model.config = config;
  for (const auto& s : bow.slices()) model.slice_dates.push_back(s.date);
  for (const auto& f : fits) model.observed.push_back(f.observed);
  model.beta.assign(T, std::vector<NaturalParams>(K));
  model.beta_variance.assign(T, std::vector<std::vector<double>>(K));
  model.topic_token_mass.assign(T, std::vector<double>(K, 0.0));

  for (std::size_t k = 0; k < K; ++k) {
    ChainObservation obs;
    for (std::size_t t = 0; t < T; ++t) {
      const auto& f = fits[t];
      obs.observed.push_back(f.observed);
      if (f.observed) {
        obs.values.push_back(mean_to_natural(f.phi.row(k), config.probability_floor));
        obs.variances.emplace_back(V, observation_variance(config, f.topic_mass[k]));
        model.topic_token_mass[t][k] = f.topic_mass[k];
      } else {
        obs.values.emplace_back(V, 0.0);
        obs.variances.emplace_back(V, 1.0);
      }
    }
    auto post = kalman_smooth(obs, config.sigma2, config.prior_mean, config.prior_variance);
    for (std::size_t t = 0; t < T; ++t) {
      model.beta[t][k] = std::move(post.means[t]);
      model.beta_variance[t][k] = std::move(post.variances[t]);
    }
  }

  ChainObservation props;
  for (std::size_t t = 0; t < T; ++t) {
    const auto& f = fits[t];
    props.observed.push_back(f.observed);
    if (f.observed) {
      props.values.push_back(mean_to_natural(f.proportions, config.probability_floor));
      props.variances.emplace_back(K, observation_variance(config, static_cast<double>(f.documents)));
    } else {
      props.values.emplace_back(K, 0.0);
      props.variances.emplace_back(K, 1.0);
    }
  }
  auto post = kalman_smooth(props, config.sigma2, config.prior_mean, config.prior_variance);
  model.alpha = std::move(post.means);
  model.alpha_variance = std::move(post.variances);
  return model;
}

std::vector<std::vector<std::string>> topic_trajectory(const DtmModel& model, const Vocabulary& vocab,
                                                       std::size_t topic, std::size_t n) {
  if (topic >= model.num_topics) throw ConfigError("topic index out of range");
  if (vocab.size() != model.vocabulary_size) throw ConfigError("vocabulary does not match the DTM");
  std::vector<std::vector<std::string>> out;
  for (std::size_t t = 0; t < model.slices(); ++t) {
    const auto pi = model.topic_distribution(t, topic);
    std::vector<std::string> words;
    for (TokenId id : top_word_ids(pi, n)) words.push_back(vocab.token(id));
    out.push_back(std::move(words));
  }
  return out;
}

}  // namespace crisiscomm
