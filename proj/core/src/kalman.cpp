#include "crisiscomm/kalman.hpp"

#include <cmath>

#include "crisiscomm/error.hpp"

namespace crisiscomm {
namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

SmootherOutput kalman_smooth(std::span<const ScalarObservation> observations, double sigma2, double prior_mean,
                             double prior_var) {
  const std::size_t T = observations.size();
  if (T == 0) throw ConfigError("kalman_smooth needs at least one slice");
  if (!positive_finite(sigma2) && sigma2 != 0.0) throw ConfigError("sigma2 must be finite and nonnegative");
  if (!positive_finite(prior_var)) throw ConfigError("prior variance must be finite and positive");

  SmootherOutput out;
  out.filtered.resize(T);
  out.smoothed.resize(T);
  std::vector<double> predicted_var(T);

  double mean = prior_mean;
  double var = prior_var;
  for (std::size_t t = 0; t < T; ++t) {
    if (t > 0) var += sigma2;
    predicted_var[t] = var;
    const auto& obs = observations[t];
    if (obs.observed) {
      if (!positive_finite(obs.variance)) throw ConfigError("observation variances must be positive");
      const double gain = var / (var + obs.variance);
      mean += gain * (obs.value - mean);
      var = var * obs.variance / (var + obs.variance);
    }
    out.filtered[t] = {mean, var};
  }

  out.smoothed[T - 1] = out.filtered[T - 1];
  for (std::size_t t = T - 1; t-- > 0;) {
    const auto& f = out.filtered[t];
    const double gain = f.variance / predicted_var[t + 1];
    const auto& next = out.smoothed[t + 1];
    out.smoothed[t].mean = f.mean + gain * (next.mean - f.mean);
    out.smoothed[t].variance = f.variance + gain * gain * (next.variance - predicted_var[t + 1]);
  }
  return out;
}

ChainPosterior kalman_smooth(const ChainObservation& observations, double sigma2, double prior_mean,
                             double prior_var) {
  const std::size_t T = observations.slices();
  if (T == 0) throw ConfigError("kalman_smooth needs at least one slice");
  if (observations.values.size() != T || observations.variances.size() != T)
    throw ConfigError("chain observation arrays disagree on the slice count");
  const std::size_t V = observations.values.front().size();
  if (V == 0) throw ConfigError("chain observations have zero width");
  for (std::size_t t = 0; t < T; ++t) {
    if (observations.values[t].size() != V || observations.variances[t].size() != V)
      throw ConfigError("chain observations have inconsistent widths");
  }

  ChainPosterior post;
  post.means.assign(T, std::vector<double>(V, 0.0));
  post.variances.assign(T, std::vector<double>(V, 0.0));
  std::vector<ScalarObservation> coord(T);
  for (std::size_t i = 0; i + 1 < V; ++i) {
    for (std::size_t t = 0; t < T; ++t) {
      coord[t] = {observations.values[t][i], observations.variances[t][i], observations.observed[t]};
    }
    const auto smoothed = kalman_smooth(coord, sigma2, prior_mean, prior_var).smoothed;
    for (std::size_t t = 0; t < T; ++t) {
      post.means[t][i] = smoothed[t].mean;
      post.variances[t][i] = smoothed[t].variance;
    }
  }
  return post;
}

}  // namespace crisiscomm
