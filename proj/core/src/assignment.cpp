#include "crisiscomm/assignment.hpp"

#include <cmath>
#include <limits>

#include "crisiscomm/error.hpp"

namespace crisiscomm {

std::vector<std::size_t> max_weight_assignment(const Matrix& scores) {
  const std::size_t n = scores.rows();
  if (scores.cols() != n) throw ConfigError("assignment needs a square score matrix");
  if (n == 0) return {};

  // Potentials formulation on costs = -scores, 1-based with a dummy column 0.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -scores(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> match(n);
  for (std::size_t j = 1; j <= n; ++j) match[p[j] - 1] = j - 1;
  return match;
}

Matrix row_cosine(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ConfigError("row_cosine dimension mismatch");
  auto norm = [](std::span<const double> r) {
    double s = 0.0;
    for (double x : r) s += x * x;
    return std::sqrt(s);
  };
  Matrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double na = norm(a.row(i));
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double nb = norm(b.row(j));
      double dot = 0.0;
      for (std::size_t c = 0; c < a.cols(); ++c) dot += a(i, c) * b(j, c);
      out(i, j) = (na > 0.0 && nb > 0.0) ? dot / (na * nb) : 0.0;
    }
  }
  return out;
}

}  // namespace crisiscomm
