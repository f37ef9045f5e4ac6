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

// Exhaustive small-graph enumeration and the partition-versus-rank scan run
// over it.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/controllability.hpp"
#include "core/lqgame.hpp"
#include "core/topology.hpp"

namespace gbcs {

inline constexpr int kMaxEnumerationAgents = 7;
inline constexpr int kDefaultScanAgentLimit = 6;

// Bit k of a mask stands for the k-th agent pair in the order
// (1,2), (1,3), ..., (1,h), (2,3), ..., (h-1,h).
std::vector<Edge> EdgesFromMask(int h, std::uint64_t mask);
std::uint64_t MaskFromTopology(const Topology& top);

// Smallest mask reachable by relabelling agents.
std::uint64_t CanonicalMask(int h, std::uint64_t mask);

struct LabeledGraph {
  std::uint64_t mask = 0;
  Topology topology;
};

// Ascending mask order. With dedup only masks equal to their canonical form
// survive. Throws UsageError unless 1 <= h <= 7.
std::vector<LabeledGraph> EnumerateGraphs(int h, bool dedup);

enum class Classification {
  kConsistent,
  kTheoremViolation,
  kConjectureCounterexample,
  kNumericFailure,
};

std::string_view ClassificationName(Classification c);

struct ScanRecord {
  std::uint64_t graph_id = 0;
  int h = 0;
  std::vector<Edge> edges;
  bool sep_nontrivial = false;
  bool t_rows_equal = false;
  bool thm2_uncontrollable = false;
  bool controllable = false;
  int projected_rank = 0;
  Classification classification = Classification::kConsistent;
  std::string failure;  // set only for kNumericFailure
};

// Throws InvariantError when the label disagrees with the two flags.
void CheckClassification(const ScanRecord& r);

struct ScanSummary {
  int graphs = 0;
  int consistent = 0;
  int theorem_violations = 0;
  int conjecture_counterexamples = 0;
  int numeric_failures = 0;
};

struct ScanOptions {
  bool dedup = false;
  bool allow_large = false;  // lifts the h <= 6 guard
  ParamOverrides overrides;
  Tolerances tolerances;
  // 0 runs sequentially; negative reads GBCS_LAB_THREADS.
  int threads = -1;
};

struct ScanResult {
  int h = 0;
  std::vector<ScanRecord> records;  // ascending graph_id
  ScanSummary summary;
};

ScanRecord ScanGraph(const LabeledGraph& graph, const ScanOptions& options);
ScanResult ConjectureScan(int h, const ScanOptions& options = {});

// Value of GBCS_LAB_THREADS, 0 when unset or unparsable.
int ThreadsFromEnvironment();

}  // namespace gbcs
