#include "crisiscomm/logistic_normal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crisiscomm/error.hpp"

namespace crisiscomm {

std::vector<double> natural_to_mean(std::span<const double> beta) {
  if (beta.empty()) throw ConfigError("natural parameter vector is empty");
  for (double b : beta) {
    if (!std::isfinite(b)) throw ConfigError("natural parameters must be finite");
  }
  if (beta.back() != 0.0) throw ConfigError("natural parameters violate the gauge beta[V-1] = 0");
  const double top = *std::max_element(beta.begin(), beta.end());
  std::vector<double> pi(beta.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    pi[i] = std::exp(beta[i] - top);
    sum += pi[i];
  }
  for (double& p : pi) p /= sum;
  return pi;
}

NaturalParams mean_to_natural(std::span<const double> pi, double floor) {
  if (pi.empty()) throw ConfigError("probability vector is empty");
  if (!(floor >= 0.0)) throw ConfigError("probability floor must be nonnegative");
  double sum = 0.0;
  for (double p : pi) {
    if (!std::isfinite(p) || p < 0.0) throw ConfigError("probabilities must be finite and nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("probabilities must sum to 1");

  std::vector<double> floored(pi.begin(), pi.end());
  bool changed = false;
  for (double& p : floored) {
    if (p < floor) {
      p = floor;
      changed = true;
    }
  }
  if (changed) {
    double s = 0.0;
    for (double p : floored) s += p;
    for (double& p : floored) p /= s;
  }
  if (floored.back() <= 0.0) throw ConfigError("last probability is zero; use a positive floor");

  const double log_last = std::log(floored.back());
  NaturalParams beta(floored.size());
  for (std::size_t i = 0; i + 1 < floored.size(); ++i) beta[i] = std::log(floored[i]) - log_last;
  beta.back() = 0.0;
  for (double b : beta) {
    if (!std::isfinite(b)) throw ConfigError("zero probability produced an infinite natural parameter");
  }
  return beta;
}

double chain_logdensity(std::span<const double> beta_t, std::span<const double> beta_prev, double sigma2) {
  if (beta_t.size() != beta_prev.size()) throw ConfigError("chain_logdensity dimension mismatch");
  if (beta_t.empty()) throw ConfigError("chain_logdensity on empty vectors");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ConfigError("sigma2 must be finite and positive");
  const std::size_t free = beta_t.size() - 1;
  double sq = 0.0;
  for (std::size_t i = 0; i < free; ++i) {
    const double d = beta_t[i] - beta_prev[i];
    sq += d * d;
  }
  return -0.5 * static_cast<double>(free) * std::log(2.0 * std::numbers::pi * sigma2) - sq / (2.0 * sigma2);
}

}  // namespace crisiscomm
