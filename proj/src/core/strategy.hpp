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

// Strategy matrix S = sum_i b_i b_i^T over the strategy vectors, and the
// coarsest strategy-equivalent partition of {0, 1, ..., H}.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/topology.hpp"

namespace gbcs {

class StrategyMatrix {
 public:
  explicit StrategyMatrix(int size) : size_(size), entries_(size * size, 0) {}

  int size() const noexcept { return size_; }
  std::int64_t& operator()(int i, int j) { return entries_[i * size_ + j]; }
  std::int64_t operator()(int i, int j) const { return entries_[i * size_ + j]; }
  std::span<const std::int64_t> entries() const noexcept { return entries_; }

  // Symmetric, row 0 == column 0 == diagonal, S[0][0] == H.
  bool SatisfiesInvariants() const;
  std::int64_t RowSum(int i) const;
  linalg::Matrix ToMatrix() const;

  friend bool operator==(const StrategyMatrix&, const StrategyMatrix&) = default;

 private:
  int size_;
  std::vector<std::int64_t> entries_;
};

StrategyMatrix ComputeStrategyMatrix(const Topology& top);

// Counts common closed neighbours directly, without outer products. Used as
// the independent route for ComputeStrategyMatrix.
StrategyMatrix CommonNeighborMatrix(const Topology& top);

struct Partition {
  // Cells sorted by minimum member, members ascending. Cell 0 is {0}.
  std::vector<std::vector<int>> cells;

  std::vector<int> CellIndex() const;  // index -> cell
  friend bool operator==(const Partition&, const Partition&) = default;
};

std::int64_t CellStrategyCount(const StrategyMatrix& s, int i, std::span<const int> cell);

struct SepResult {
  Partition partition;
  int iterations = 0;  // refinement rounds until fixpoint
};

SepResult CoarsestSepWithStats(const StrategyMatrix& s);
Partition CoarsestSep(const StrategyMatrix& s);

bool HasNontrivialCell(const Partition& p);

// Every pair in a cell has equal cell sums against every cell.
bool IsEquitable(const StrategyMatrix& s, const Partition& p);

std::string FormatPartition(const Partition& p);

}  // namespace gbcs
