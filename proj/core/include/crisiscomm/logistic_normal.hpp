#pragma once

#include <span>
#include <vector>

namespace crisiscomm {

// Natural parameters of a V-category multinomial relative to the last
// category: beta[i] = log(pi[i] / pi[V-1]), so beta[V-1] == 0 always.
using NaturalParams = std::vector<double>;

// Softmax with max subtraction. Throws ConfigError on non-finite input, an
// empty vector or a broken gauge (beta.back() != 0).
std::vector<double> natural_to_mean(std::span<const double> beta);

// Floors every entry at `floor`, renormalizes, and takes log ratios against
// the last entry. Throws ConfigError unless pi is nonnegative and sums to
// 1 within 1e-9.
NaturalParams mean_to_natural(std::span<const double> pi, double floor = 1e-9);

// log N(beta_t | beta_prev, sigma2 I) over the V-1 free coordinates.
double chain_logdensity(std::span<const double> beta_t, std::span<const double> beta_prev, double sigma2);

}  // namespace crisiscomm
