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

#include "core/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "core/errors.hpp"

namespace gbcs {
namespace {

int PairCount(int h) { return h * (h - 1) / 2; }

// pair_index[i][j] for 0-based agents i < j.
std::vector<std::vector<int>> PairIndex(int h) {
  std::vector<std::vector<int>> index(h, std::vector<int>(h, -1));
  int k = 0;
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) index[i][j] = index[j][i] = k++;
  return index;
}

void CheckAgentRange(int h) {
  if (h < 1 || h > kMaxEnumerationAgents) {
    throw UsageError("agent count must lie in 1.." + std::to_string(kMaxEnumerationAgents) +
                     ", got " + std::to_string(h));
  }
}

}  // namespace

std::vector<Edge> EdgesFromMask(int h, std::uint64_t mask) {
  std::vector<Edge> edges;
  int k = 0;
  for (int i = 1; i <= h; ++i)
    for (int j = i + 1; j <= h; ++j, ++k)
      if (mask >> k & 1U) edges.push_back({i, j});
  return edges;
}

std::uint64_t MaskFromTopology(const Topology& top) {
  const auto index = PairIndex(top.agent_count());
  std::uint64_t mask = 0;
  for (const Edge& e : top.edges()) mask |= std::uint64_t{1} << index[e.a - 1][e.b - 1];
  return mask;
}

std::uint64_t CanonicalMask(int h, std::uint64_t mask) {
  CheckAgentRange(h);
  const auto index = PairIndex(h);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) pairs.emplace_back(i, j);
  std::vector<int> perm(h);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = mask;
  do {
    std::uint64_t image = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1U)
        image |= std::uint64_t{1} << index[perm[pairs[k].first]][perm[pairs[k].second]];
    best = std::min(best, image);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<LabeledGraph> EnumerateGraphs(int h, bool dedup) {
  CheckAgentRange(h);
  const std::uint64_t total = std::uint64_t{1} << PairCount(h);
  std::vector<LabeledGraph> out;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (dedup && CanonicalMask(h, mask) != mask) continue;
    out.push_back({mask, Topology::Create(h, EdgesFromMask(h, mask))});
  }
  return out;
}

std::string_view ClassificationName(Classification c) {
  switch (c) {
    case Classification::kConsistent:
      return "consistent";
    case Classification::kTheoremViolation:
      return "THEOREM_VIOLATION";
    case Classification::kConjectureCounterexample:
      return "CONJECTURE_COUNTEREXAMPLE";
    case Classification::kNumericFailure:
      return "NUMERIC_FAILURE";
  }
  return "unknown";
}

void CheckClassification(const ScanRecord& r) {
  if (r.classification == Classification::kNumericFailure) return;
  const bool violation = r.thm2_uncontrollable && r.controllable;
  const bool counterexample = !r.thm2_uncontrollable && !r.controllable;
  const bool ok = (r.classification == Classification::kTheoremViolation) == violation &&
                  (r.classification == Classification::kConjectureCounterexample) ==
                      counterexample;
  if (!ok) {
    throw InvariantError("scan record " + std::to_string(r.graph_id) + " is labelled " +
                         std::string(ClassificationName(r.classification)) +
                         " but its flags disagree");
  }
}

ScanRecord ScanGraph(const LabeledGraph& graph, const ScanOptions& options) {
  ScanRecord r;
  r.graph_id = graph.mask;
  r.h = graph.topology.agent_count();
  r.edges = graph.topology.edges();
  try {
    const GbcsParams p = DefaultParams(graph.topology, options.overrides);
    const PartitionVerdict thm2 =
        CheckPartitionVerdict(graph.topology, p, options.tolerances.t_rows);
    const GameControllability gc =
        GameControllable(p, options.tolerances.rank, options.tolerances.krylov);
    r.sep_nontrivial = thm2.sep_nontrivial;
    r.t_rows_equal = thm2.t_rows_equal;
    r.thm2_uncontrollable = thm2.thm2_uncontrollable;
    r.controllable = gc.decision.controllable;
    r.projected_rank = gc.decision.rank;
    if (r.thm2_uncontrollable && r.controllable) {
      r.classification = Classification::kTheoremViolation;
    } else if (!r.thm2_uncontrollable && !r.controllable) {
      r.classification = Classification::kConjectureCounterexample;
    } else {
      r.classification = Classification::kConsistent;
    }
  } catch (const NumericError& e) {
    r.classification = Classification::kNumericFailure;
    r.failure = e.what();
  }
  CheckClassification(r);
  return r;
}

int ThreadsFromEnvironment() {
  const char* raw = std::getenv("GBCS_LAB_THREADS");
  if (raw == nullptr) return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 0) return 0;
  return static_cast<int>(std::min<long>(value, 256));
}

ScanResult ConjectureScan(int h, const ScanOptions& options) {
  CheckAgentRange(h);
  if (h > kDefaultScanAgentLimit && !options.allow_large) {
    throw UsageError("scans above " + std::to_string(kDefaultScanAgentLimit) +
                     " agents need the large-scan override");
  }
  const std::vector<LabeledGraph> graphs = EnumerateGraphs(h, options.dedup);
  ScanResult result;
  result.h = h;
  result.records.resize(graphs.size());

  const int threads = options.threads < 0 ? ThreadsFromEnvironment() : options.threads;
  if (threads <= 1) {
    for (std::size_t i = 0; i < graphs.size(); ++i)
      result.records[i] = ScanGraph(graphs[i], options);
  } else {
    // Workers fill disjoint slots, so the merge is already in id order.
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < graphs.size(); i = next++)
            result.records[i] = ScanGraph(graphs[i], options);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ScanSummary& s = result.summary;
  s.graphs = static_cast<int>(result.records.size());
  for (const ScanRecord& r : result.records) {
    switch (r.classification) {
      case Classification::kConsistent:
        ++s.consistent;
        break;
      case Classification::kTheoremViolation:
        ++s.theorem_violations;
        break;
      case Classification::kConjectureCounterexample:
        ++s.conjecture_counterexamples;
        break;
      case Classification::kNumericFailure:
        ++s.numeric_failures;
        break;
    }
  }
  return result;
}

}  // namespace gbcs
