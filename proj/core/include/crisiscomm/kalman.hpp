#pragma once

#include <span>
#include <vector>

namespace crisiscomm {

// One slice of a scalar random-walk chain
//   x_0 ~ N(prior_mean, prior_var),  x_t = x_{t-1} + N(0, sigma2),
//   y_t = x_t + N(0, variance)   on observed slices.
struct ScalarObservation {
  double value = 0.0;
  double variance = 1.0;
  bool observed = true;
};

struct GaussianMarginal {
  double mean = 0.0;
  double variance = 0.0;
};

struct SmootherOutput {
  std::vector<GaussianMarginal> filtered;
  std::vector<GaussianMarginal> smoothed;
};

// Forward filter plus Rauch-Tung-Striebel backward pass. Unobserved slices
// only propagate the prediction. Throws ConfigError on an empty chain or
// non-positive variances.
SmootherOutput kalman_smooth(std::span<const ScalarObservation> observations, double sigma2, double prior_mean,
                             double prior_var);

// Per-slice pseudo-observations of a V-vector chain in natural parameters.
// Slices with observed == false carry no information.
struct ChainObservation {
  std::vector<std::vector<double>> values;     // T x V, gauge-fixed
  std::vector<std::vector<double>> variances;  // T x V, > 0 on observed slices
  std::vector<bool> observed;                  // T

  std::size_t slices() const { return observed.size(); }
};

struct ChainPosterior {
  std::vector<std::vector<double>> means;      // T x V, last coordinate 0
  std::vector<std::vector<double>> variances;  // T x V, last coordinate 0
};

// Runs the scalar smoother independently on each of the V-1 free
// coordinates; the gauge coordinate stays at exactly 0 with zero variance.
ChainPosterior kalman_smooth(const ChainObservation& observations, double sigma2, double prior_mean,
                             double prior_var);

}  // namespace crisiscomm
