/*
Copyright 2026 The gbcs-lab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Reference computations used only by the tests. Each one takes a route that
// shares no code with the library routine it checks.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "core/linalg.hpp"
#include "core/topology.hpp"

namespace gbcs::testing {

using linalg::Matrix;

// Rank by Gaussian elimination over the rationals. Every double converts to
// an exact fraction, so the answer carries no rounding.
inline int ExactRank(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = mpq_class(m(r, c));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

// Taylor series in long double with scaling and squaring.
inline Matrix SeriesExpm(const Matrix& a) {
  const std::size_t n = a.rows();
  using Ld = std::vector<std::vector<long double>>;
  auto mul = [n](const Ld& x, const Ld& y) {
    Ld z(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
  };
  long double norm = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < n; ++j) row += std::fabs(static_cast<long double>(a(i, j)));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  long double scale = 1.0L;
  while (norm * scale > 0.25L) {
    scale /= 2.0L;
    ++squarings;
  }
  Ld x(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i][j] = a(i, j) * scale;
  Ld sum(n, std::vector<long double>(n, 0.0L));
  Ld term(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) sum[i][i] = term[i][i] = 1.0L;
  for (int k = 1; k <= 30; ++k) {
    term = mul(term, x);
    for (auto& row : term)
      for (auto& v : row) v /= k;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = static_cast<double>(sum[i][j]);
  return out;
}

inline Matrix RandomMatrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                           double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = dist(rng);
  return m;
}

// All labelled graphs on h agents, built edge by edge from a counter.
inline std::vector<Topology> AllGraphs(int h) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= h; ++i)
    for (int j = i + 1; j <= h; ++j) pairs.emplace_back(i, j);
  std::vector<Topology> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (bits >> k & 1U) edges.push_back({pairs[k].first, pairs[k].second});
    out.push_back(Topology::Create(h, edges));
  }
  return out;
}

inline Topology Path(int h) {
  std::vector<Edge> edges;
  for (int i = 1; i < h; ++i) edges.push_back({i, i + 1});
  return Topology::Create(h, edges);
}

inline Topology Complete(int h) {
  std::vector<Edge> edges;
  for (int i = 1; i <= h; ++i)
    for (int j = i + 1; j <= h; ++j) edges.push_back({i, j});
  return Topology::Create(h, edges);
}

inline Topology Star(int h) {
  std::vector<Edge> edges;
  for (int j = 2; j <= h; ++j) edges.push_back({1, j});
  return Topology::Create(h, edges);
}

inline Topology Edgeless(int h) { return Topology::Create(h, {}); }

}  // namespace gbcs::testing
