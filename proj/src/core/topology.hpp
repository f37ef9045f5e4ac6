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

// Regulator-plus-agents graphs. Agents are numbered 1..H; the regulator is
// index 0 in every (H+1)-sized vector or matrix and is adjacent to all agents
// implicitly, so it never appears in the edge list.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/linalg.hpp"

namespace gbcs {

struct Edge {
  int a = 0;  // a < b
  int b = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Topology {
 public:
  // Validates: H >= 1, endpoints in [1, H], no self-loops, no duplicates.
  // Edges are normalised to a < b and sorted.
  static Topology Create(int agent_count, std::vector<Edge> edges);

  int agent_count() const noexcept { return agents_; }
  // State dimension H + 1.
  int dimension() const noexcept { return agents_ + 1; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool adjacent(int i, int j) const;
  int degree(int i) const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  Topology(int agents, std::vector<Edge> edges);
  int agents_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<char>> adjacency_;
};

// Line format: `agents <H>` first, then `edge <i> <j>` lines. Blank lines and
// `#` comments are ignored.
Topology ParseTopology(std::string_view text);
// {"agents": H, "edges": [[i, j], ...]}
Topology ParseTopologyJson(std::string_view text);
// Dispatches on the `.json` extension.
Topology LoadTopology(const std::filesystem::path& path);
std::string FormatTopology(const Topology& top);

using StrategyVector = std::vector<int>;

// 0/1 indicator of the closed neighbourhood of `agent`, regulator slot set.
StrategyVector StrategyVectorOf(const Topology& top, int agent);

// D - A over agents only.
linalg::Matrix Laplacian(const Topology& top);

// Kalman rank of (L, e_leader) equals H.
bool ClassicControllable(const Topology& top, int leader,
                         std::optional<double> tol = std::nullopt);

}  // namespace gbcs
