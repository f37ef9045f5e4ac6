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

#include "core/strategy.hpp"

#include <algorithm>
#include <map>

#include "core/errors.hpp"

namespace gbcs {

bool StrategyMatrix::SatisfiesInvariants() const {
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j)
      if ((*this)(i, j) != (*this)(j, i) || (*this)(i, j) < 0) return false;
    if ((*this)(0, i) != (*this)(i, i)) return false;
  }
  return (*this)(0, 0) == size_ - 1;
}

std::int64_t StrategyMatrix::RowSum(int i) const {
  std::int64_t s = 0;
  for (int j = 0; j < size_; ++j) s += (*this)(i, j);
  return s;
}

linalg::Matrix StrategyMatrix::ToMatrix() const {
  linalg::Matrix m(size_, size_);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) m(i, j) = static_cast<double>((*this)(i, j));
  return m;
}

StrategyMatrix ComputeStrategyMatrix(const Topology& top) {
  const int n = top.dimension();
  StrategyMatrix s(n);
  for (int agent = 1; agent <= top.agent_count(); ++agent) {
    const StrategyVector b = StrategyVectorOf(top, agent);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) += b[i] * b[j];
  }
  return s;
}

StrategyMatrix CommonNeighborMatrix(const Topology& top) {
  const int n = top.dimension();
  // Slot i belongs to the closed neighbourhood of agent k when i is the
  // regulator, k itself, or adjacent to k.
  auto in_neighborhood = [&](int k, int i) {
    return i == 0 || i == k || top.adjacent(k, i);
  };
  StrategyMatrix s(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::int64_t count = 0;
      for (int k = 1; k <= top.agent_count(); ++k)
        if (in_neighborhood(k, i) && in_neighborhood(k, j)) ++count;
      s(i, j) = count;
    }
  }
  return s;
}

std::vector<int> Partition::CellIndex() const {
  int size = 0;
  for (const auto& c : cells) size += static_cast<int>(c.size());
  std::vector<int> index(size, -1);
  for (std::size_t p = 0; p < cells.size(); ++p)
    for (int m : cells[p]) index.at(m) = static_cast<int>(p);
  return index;
}

std::int64_t CellStrategyCount(const StrategyMatrix& s, int i, std::span<const int> cell) {
  if (i < 0 || i >= s.size()) throw UsageError("CellStrategyCount: index out of range");
  if (cell.empty()) throw UsageError("CellStrategyCount: empty cell");
  std::int64_t total = 0;
  for (int k : cell) {
    if (k < 0 || k >= s.size()) throw UsageError("CellStrategyCount: cell member out of range");
    total += s(i, k);
  }
  return total;
}

namespace {

Partition Canonicalize(std::vector<std::vector<int>> cells) {
  for (auto& c : cells) std::sort(c.begin(), c.end());
  std::sort(cells.begin(), cells.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return Partition{std::move(cells)};
}

}  // namespace

SepResult CoarsestSepWithStats(const StrategyMatrix& s) {
  const int n = s.size();
  std::vector<std::vector<int>> cells{{0}};
  if (n > 1) {
    std::vector<int> agents(n - 1);
    for (int i = 1; i < n; ++i) agents[i - 1] = i;
    cells.push_back(std::move(agents));
  }
  SepResult result;
  for (;;) {
    // Signature: current cell, then the cell sums against every current cell.
    std::vector<int> owner(n);
    for (std::size_t p = 0; p < cells.size(); ++p)
      for (int m : cells[p]) owner[m] = static_cast<int>(p);
    std::map<std::vector<std::int64_t>, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
      std::vector<std::int64_t> sig;
      sig.reserve(cells.size() + 1);
      sig.push_back(owner[i]);
      for (const auto& c : cells) sig.push_back(CellStrategyCount(s, i, c));
      groups[std::move(sig)].push_back(i);
    }
    ++result.iterations;
    if (groups.size() == cells.size()) break;
    cells.clear();
    for (auto& [sig, members] : groups) cells.push_back(std::move(members));
  }
  result.partition = Canonicalize(std::move(cells));
  return result;
}

Partition CoarsestSep(const StrategyMatrix& s) { return CoarsestSepWithStats(s).partition; }

bool HasNontrivialCell(const Partition& p) {
  return std::any_of(p.cells.begin(), p.cells.end(),
                     [](const auto& c) { return c.size() >= 2; });
}

bool IsEquitable(const StrategyMatrix& s, const Partition& p) {
  for (const auto& cell : p.cells) {
    for (const auto& target : p.cells) {
      const std::int64_t ref = CellStrategyCount(s, cell.front(), target);
      for (int m : cell)
        if (CellStrategyCount(s, m, target) != ref) return false;
    }
  }
  return true;
}

std::string FormatPartition(const Partition& p) {
  std::string out = "{";
  for (std::size_t c = 0; c < p.cells.size(); ++c) {
    if (c) out += ", ";
    out += "{";
    for (std::size_t k = 0; k < p.cells[c].size(); ++k) {
      if (k) out += ",";
      out += std::to_string(p.cells[c][k]);
    }
    out += "}";
  }
  return out + "}";
}

}  // namespace gbcs
