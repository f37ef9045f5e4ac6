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

#include "gbcs/gbcs.h"

#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>

#include "core/controllability.hpp"
#include "core/errors.hpp"
#include "core/lqgame.hpp"
#include "core/report.hpp"
#include "core/scan.hpp"
#include "core/strategy.hpp"
#include "core/topology.hpp"

struct gbcs_topology {
  gbcs::Topology value;
};

struct gbcs_result {
  std::string summary;
  std::optional<std::string> json;
  std::optional<std::string> csv;
  std::optional<gbcs_analysis_summary> analysis;
  std::optional<gbcs_scan_summary> scan;
  std::optional<gbcs_nash_summary> nash;
};

namespace {

thread_local std::string last_error;

gbcs_status Fail(gbcs_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
gbcs_status Guard(Body&& body) {
  try {
    body();
    last_error.clear();
    return GBCS_OK;
  } catch (const gbcs::Error& e) {
    return Fail(static_cast<gbcs_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(GBCS_ERR_NUMERIC, "out of memory");
  } catch (const std::exception& e) {
    return Fail(GBCS_ERR_INVARIANT, std::string("internal error: ") + e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw gbcs::UsageError(what);
}

gbcs_options Resolve(const gbcs_options* options) {
  gbcs_options o;
  gbcs_options_init(&o);
  if (options != nullptr) o = *options;
  Require(o.tf > 0.0, "tf must be positive");
  Require(o.steps >= 10, "steps must be at least 10");
  Require(o.t_tol >= 0.0, "t_tol must be non-negative");
  Require(o.trials >= 1, "trials must be at least 1");
  Require(o.eps >= 0.0, "eps must be non-negative");
  Require(o.r_weight > 0.0, "r_weight must be positive");
  return o;
}

gbcs::ParamOverrides Overrides(const gbcs_options& o, int agents) {
  const gbcs::Matrix eye = gbcs::Matrix::Identity(agents + 1);
  gbcs::ParamOverrides ov;
  ov.q = std::vector<gbcs::Matrix>(agents, eye * o.q_weight);
  ov.q_terminal = std::vector<gbcs::Matrix>(agents, eye * o.qt_weight);
  ov.r = std::vector<double>(agents, o.r_weight);
  ov.horizon = o.tf;
  return ov;
}

gbcs::GbcsParams Params(const gbcs_topology* t, const gbcs_options& o) {
  return gbcs::DefaultParams(t->value, Overrides(o, t->value.agent_count()));
}

gbcs::Tolerances Tolerances(const gbcs_options& o) {
  gbcs::Tolerances tol;
  if (o.rank_tol > 0.0) tol.rank = o.rank_tol;
  tol.t_rows = o.t_tol;
  tol.riccati_steps = o.steps;
  return tol;
}

std::vector<double> InitialState(const gbcs_topology* t, const gbcs_options& o) {
  return std::vector<double>(t->value.dimension(), o.x0_value);
}

gbcs::SampledSignal RegulatorInput(const gbcs_options& o) {
  return gbcs::SampledSignal::Constant(o.regulator_input, o.tf, o.steps);
}

gbcs_status Emit(gbcs_result** out, gbcs_result&& value) {
  *out = new gbcs_result(std::move(value));
  return GBCS_OK;
}

}  // namespace

extern "C" {

void gbcs_options_init(gbcs_options* options) {
  if (options == nullptr) return;
  *options = gbcs_options{};
  options->tf = 1.0;
  options->steps = 1000;
  options->rank_tol = 0.0;
  options->t_tol = 1e-9;
  options->seed = gbcs::NashCheckOptions{}.seed;
  options->trials = 20;
  options->eps = 1e-3;
  options->regulator_input = 1.0;
  options->x0_value = 1.0;
  options->q_weight = 1.0;
  options->qt_weight = 1.0;
  options->r_weight = 1.0;
}

const char* gbcs_last_error(void) { return last_error.c_str(); }

const char* gbcs_version(void) { return "0.1.0"; }

gbcs_status gbcs_topology_parse(const char* text, gbcs_topology** out) {
  if (text == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] { *out = new gbcs_topology{gbcs::ParseTopology(text)}; });
}

gbcs_status gbcs_topology_load(const char* path, gbcs_topology** out) {
  if (path == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] { *out = new gbcs_topology{gbcs::LoadTopology(path)}; });
}

gbcs_status gbcs_topology_from_edges(int agents, const int* pairs, size_t edge_count,
                                     gbcs_topology** out) {
  if (out == nullptr || (pairs == nullptr && edge_count > 0))
    return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    std::vector<gbcs::Edge> edges;
    for (size_t k = 0; k < edge_count; ++k) edges.push_back({pairs[2 * k], pairs[2 * k + 1]});
    *out = new gbcs_topology{gbcs::Topology::Create(agents, std::move(edges))};
  });
}

void gbcs_topology_free(gbcs_topology* topology) { delete topology; }

int gbcs_topology_agents(const gbcs_topology* topology) {
  return topology == nullptr ? 0 : topology->value.agent_count();
}

gbcs_status gbcs_strategy_matrix(const gbcs_topology* topology, int64_t* out,
                                 size_t capacity) {
  if (topology == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    const gbcs::StrategyMatrix s = gbcs::ComputeStrategyMatrix(topology->value);
    Require(capacity >= s.entries().size(), "output buffer too small for the strategy matrix");
    std::copy(s.entries().begin(), s.entries().end(), out);
  });
}

gbcs_status gbcs_sep(const gbcs_topology* topology, int* cell_of, size_t capacity) {
  if (topology == nullptr || cell_of == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    const auto index =
        gbcs::CoarsestSep(gbcs::ComputeStrategyMatrix(topology->value)).CellIndex();
    Require(capacity >= index.size(), "output buffer too small for the partition");
    std::copy(index.begin(), index.end(), cell_of);
  });
}

gbcs_status gbcs_analyze(const gbcs_topology* topology, const gbcs_options* options,
                         gbcs_result** out) {
  if (topology == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    const gbcs_options o = Resolve(options);
    const gbcs::ControllabilityReport r =
        gbcs::Analyze(topology->value, Params(topology, o), Tolerances(o));
    gbcs_result res;
    res.summary = gbcs::ReportSummary(r);
    res.json = gbcs::ReportJson(r);
    res.analysis = gbcs_analysis_summary{r.agents,
                                         r.sep_nontrivial,
                                         r.t_rows_equal,
                                         r.thm2_uncontrollable,
                                         r.thm2_applies,
                                         r.kalman_rank,
                                         r.projected_rank,
                                         r.controllable,
                                         r.rank_threshold};
    Emit(out, std::move(res));
  });
}

gbcs_status gbcs_smatrix_report(const gbcs_topology* topology, gbcs_result** out) {
  if (topology == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    const gbcs::StrategyMatrix s = gbcs::ComputeStrategyMatrix(topology->value);
    if (!(s == gbcs::CommonNeighborMatrix(topology->value)))
      throw gbcs::InvariantError("strategy matrix disagrees with common-neighbour counts");
    gbcs_result res;
    res.summary = gbcs::StrategyMatrixText(s);
    std::string csv;
    for (int i = 0; i < s.size(); ++i) {
      for (int j = 0; j < s.size(); ++j) csv += (j ? "," : "") + std::to_string(s(i, j));
      csv += '\n';
    }
    res.csv = std::move(csv);
    Emit(out, std::move(res));
  });
}

gbcs_status gbcs_sep_report(const gbcs_topology* topology, gbcs_result** out) {
  if (topology == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    const gbcs::SepResult sep =
        gbcs::CoarsestSepWithStats(gbcs::ComputeStrategyMatrix(topology->value));
    gbcs_result res;
    res.summary = gbcs::SepSummary(sep.partition, sep.iterations);
    std::string csv = "node,cell\n";
    const auto index = sep.partition.CellIndex();
    for (std::size_t v = 0; v < index.size(); ++v)
      csv += std::to_string(v) + "," + std::to_string(index[v]) + "\n";
    res.csv = std::move(csv);
    Emit(out, std::move(res));
  });
}

gbcs_status gbcs_riccati(const gbcs_topology* topology, const gbcs_options* options,
                         gbcs_result** out) {
  if (topology == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    const gbcs_options o = Resolve(options);
    const gbcs::GbcsParams p = Params(topology, o);
    const gbcs::RiccatiSolution sol = gbcs::RiccatiSolve(p, o.steps);
    gbcs_result res;
    res.summary = gbcs::RiccatiSummary(p, sol);
    res.csv = gbcs::RiccatiCsv(p, sol);
    Emit(out, std::move(res));
  });
}

gbcs_status gbcs_simulate(const gbcs_topology* topology, const gbcs_options* options,
                          gbcs_result** out) {
  if (topology == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    const gbcs_options o = Resolve(options);
    const gbcs::GbcsParams p = Params(topology, o);
    const gbcs::Trajectory traj = gbcs::EquilibriumTrajectory(
        p, InitialState(topology, o), RegulatorInput(o), o.steps);
    gbcs_result res;
    res.summary = gbcs::TrajectorySummary(p, traj);
    res.csv = gbcs::TrajectoryCsv(p, traj);
    Emit(out, std::move(res));
  });
}

gbcs_status gbcs_nash_check(const gbcs_topology* topology, const gbcs_options* options,
                            gbcs_result** out) {
  if (topology == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    const gbcs_options o = Resolve(options);
    gbcs::NashCheckOptions nash;
    nash.trials = o.trials;
    nash.eps = o.eps;
    nash.seed = o.seed;
    nash.steps = o.steps;
    const gbcs::NashReport r = gbcs::NashDeviationCheck(
        Params(topology, o), InitialState(topology, o), RegulatorInput(o), nash);
    gbcs_result res;
    res.summary = gbcs::NashSummary(r);
    res.json = gbcs::NashJson(r);
    res.nash = gbcs_nash_summary{r.min_delta, r.threshold, r.certified};
    Emit(out, std::move(res));
  });
}

gbcs_status gbcs_scan(int agents, const gbcs_options* options, gbcs_result** out) {
  if (out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  return Guard([&] {
    const gbcs_options o = Resolve(options);
    Require(agents >= 1 && agents <= gbcs::kMaxEnumerationAgents,
            "scan agent count must lie in 1..7");
    gbcs::ScanOptions scan;
    scan.dedup = o.dedup != 0;
    scan.allow_large = o.allow_large != 0;
    scan.overrides = Overrides(o, agents);
    scan.tolerances = Tolerances(o);
    const gbcs::ScanResult r = gbcs::ConjectureScan(agents, scan);
    gbcs_result res;
    res.summary = gbcs::ScanSummaryText(r);
    res.csv = gbcs::ScanCsv(r);
    const gbcs::ScanSummary& s = r.summary;
    res.scan = gbcs_scan_summary{s.graphs, s.consistent, s.theorem_violations,
                                 s.conjecture_counterexamples, s.numeric_failures};
    Emit(out, std::move(res));
  });
}

const char* gbcs_result_text(const gbcs_result* result, gbcs_format format) {
  if (result == nullptr) return nullptr;
  switch (format) {
    case GBCS_FORMAT_SUMMARY:
      return result->summary.c_str();
    case GBCS_FORMAT_JSON:
      return result->json ? result->json->c_str() : nullptr;
    case GBCS_FORMAT_CSV:
      return result->csv ? result->csv->c_str() : nullptr;
  }
  return nullptr;
}

void gbcs_result_free(gbcs_result* result) { delete result; }

gbcs_status gbcs_result_analysis(const gbcs_result* result, gbcs_analysis_summary* out) {
  if (result == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  if (!result->analysis) return Fail(GBCS_ERR_USAGE, "result is not an analysis");
  *out = *result->analysis;
  return GBCS_OK;
}

gbcs_status gbcs_result_scan(const gbcs_result* result, gbcs_scan_summary* out) {
  if (result == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  if (!result->scan) return Fail(GBCS_ERR_USAGE, "result is not a scan");
  *out = *result->scan;
  return GBCS_OK;
}

gbcs_status gbcs_result_nash(const gbcs_result* result, gbcs_nash_summary* out) {
  if (result == nullptr || out == nullptr) return Fail(GBCS_ERR_USAGE, "null argument");
  if (!result->nash) return Fail(GBCS_ERR_USAGE, "result is not a Nash check");
  *out = *result->nash;
  return GBCS_OK;
}

}  // extern "C"
