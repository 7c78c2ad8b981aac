/*
Copyright 2026 The Stereo SELD Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef SSELD_HUNGARIAN_H_
#define SSELD_HUNGARIAN_H_

#include <concepts>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace sseld {

// Minimum-cost assignment on a dense rows x cols cost matrix (Kuhn-Munkres
// with potentials, O(n^2 m)). Every element of the smaller side is assigned;
// the result lists (row, col) pairs sorted by row.
template <std::floating_point T>
std::vector<std::pair<size_t, size_t>> MinCostAssignment(
    const std::vector<std::vector<T>>& cost) {
  const size_t rows = cost.size();
  const size_t cols = rows == 0 ? 0 : cost[0].size();
  if (rows == 0 || cols == 0) return {};

  // The solver below needs n <= m; transpose otherwise.
  const bool transposed = rows > cols;
  const size_t n = transposed ? cols : rows;
  const size_t m = transposed ? rows : cols;
  const auto at = [&](size_t i, size_t j) -> T {
    return transposed ? cost[j][i] : cost[i][j];
  };

  constexpr T kInf = std::numeric_limits<T>::infinity();
  // 1-based; index 0 is the virtual start column.
  std::vector<T> u(n + 1, T{0}), v(m + 1, T{0});
  std::vector<size_t> match(m + 1, 0), way(m + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    match[0] = i;
    size_t j0 = 0;
    std::vector<T> min_slack(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const size_t i0 = match[j0];
      T delta = kInf;
      size_t j1 = 0;
      for (size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const T reduced = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < min_slack[j]) {
          min_slack[j] = reduced;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::pair<size_t, size_t>> pairs;
  pairs.reserve(n);
  if (transposed) {
    // Solver columns are the caller's rows, already in ascending order.
    for (size_t j = 1; j <= m; ++j) {
      if (match[j] != 0) pairs.emplace_back(j - 1, match[j] - 1);
    }
  } else {
    pairs.resize(n);
    for (size_t j = 1; j <= m; ++j) {
      if (match[j] != 0) pairs[match[j] - 1] = {match[j] - 1, j - 1};
    }
  }
  return pairs;
}

}  // namespace sseld

#endif  // SSELD_HUNGARIAN_H_
