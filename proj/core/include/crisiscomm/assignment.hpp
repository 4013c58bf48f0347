#pragma once

#include <cstddef>
#include <vector>

#include "crisiscomm/matrix.hpp"

namespace crisiscomm {

// Maximum-weight perfect matching on a square score matrix (Hungarian
// algorithm, O(n^3)). Returns `match` with row r assigned to column match[r].
std::vector<std::size_t> max_weight_assignment(const Matrix& scores);

// Cosine similarity between every row of `a` and every row of `b`.
Matrix row_cosine(const Matrix& a, const Matrix& b);

}  // namespace crisiscomm
