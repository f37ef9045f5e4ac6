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

#include "core/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace gbcs {
namespace {

using nlohmann::json;

json MatrixJson(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

json MatrixListJson(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const Matrix& m : ms) out.push_back(MatrixJson(m));
  return out;
}

json ColumnJson(const Matrix& m) { return m.ColumnVector(0); }

json ParamsJson(const GbcsParams& p) {
  return {{"a_tilde", MatrixJson(p.a_tilde)},
          {"b_tilde", ColumnJson(p.b_tilde)},
          {"c", ColumnJson(p.c)},
          {"q", MatrixListJson(p.q)},
          {"q_terminal", MatrixListJson(p.q_terminal)},
          {"r", p.r},
          {"tf", p.horizon}};
}

std::string Bool(bool b) { return b ? "true" : "false"; }

void AppendRow(std::string& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += FormatNumber(values[i]);
  }
  out += '\n';
}

}  // namespace

std::string FormatEdges(const std::vector<Edge>& edges) {
  std::string out;
  for (const Edge& e : edges) {
    if (!out.empty()) out += ';';
    out += std::to_string(e.a) + "-" + std::to_string(e.b);
  }
  return out;
}

std::string FormatNumber(double v) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string StrategyMatrixText(const StrategyMatrix& s) {
  std::ostringstream os;
  for (int i = 0; i < s.size(); ++i) {
    for (int j = 0; j < s.size(); ++j) os << (j ? " " : "") << s(i, j);
    os << '\n';
  }
  return os.str();
}

std::string ReportJson(const ControllabilityReport& r) {
  json edges = json::array();
  for (const Edge& e : r.edges) edges.push_back({e.a, e.b});
  json strategy = json::array();
  for (int i = 0; i < r.strategy.size(); ++i) {
    std::vector<std::int64_t> row;
    for (int j = 0; j < r.strategy.size(); ++j) row.push_back(r.strategy(i, j));
    strategy.push_back(row);
  }
  json tolerances = {{"t_rows", r.tolerances.t_rows},
                     {"krylov_deflation", r.tolerances.krylov},
                     {"riccati_steps", r.tolerances.riccati_steps},
                     {"rank_threshold_used", r.rank_threshold}};
  tolerances["rank"] = r.tolerances.rank ? json(*r.tolerances.rank) : json("auto");
  json doc = {
      {"agents", r.agents},
      {"edges", edges},
      {"strategy_matrix", strategy},
      {"sep_cells", r.sep.cells},
      {"t_row_deviation_per_cell", r.t_row_deviation_per_cell},
      {"sep_nontrivial", r.sep_nontrivial},
      {"t_rows_equal", r.t_rows_equal},
      {"assumption_holds", r.assumption_holds},
      {"thm2_applies", r.thm2_applies},
      {"thm2_uncontrollable", r.thm2_uncontrollable},
      {"kalman_rank", r.kalman_rank},
      {"projected_rank", r.projected_rank},
      {"controllable", r.controllable},
      {"tolerances", tolerances},
      {"params", ParamsJson(r.params)},
      {"params_digest", r.params_digest},
      {"debug",
       {{"projected_kalman_rank", r.projected_kalman_rank},
        {"projected_rank_from_k1", r.projected_rank_from_k1}}},
  };
  if (!r.assumption_note.empty()) doc["assumption_note"] = r.assumption_note;
  return doc.dump(2) + "\n";
}

std::string ReportSummary(const ControllabilityReport& r) {
  std::ostringstream os;
  os << "agents: " << r.agents << "\n"
     << "edges: " << (r.edges.empty() ? "(none)" : FormatEdges(r.edges)) << "\n"
     << "strategy matrix:\n"
     << StrategyMatrixText(r.strategy) << "coarsest SEP: "
     << FormatPartition(r.sep) << "\n"
     << "T rows equal within SEP cells: " << Bool(r.t_rows_equal) << "\n"
     << "partition test says uncontrollable: " << Bool(r.thm2_uncontrollable)
     << (r.thm2_applies ? " (standing assumption holds)" : "") << "\n"
     << "Kalman rank: " << r.kalman_rank << ", projected rank: " << r.projected_rank << " of "
     << r.agents + 1 << " (threshold " << FormatNumber(r.rank_threshold) << ")\n"
     << "controllable: " << Bool(r.controllable) << "\n";
  if (!r.assumption_holds) os << "standing assumption fails: " << r.assumption_note << "\n";
  return os.str();
}

std::string TrajectoryCsv(const GbcsParams& p, const Trajectory& traj) {
  const int n = p.n();
  std::string out = "t,x_r";
  for (int j = 1; j < n; ++j) out += ",x_" + std::to_string(j);
  for (int i = 1; i <= p.agents; ++i) {
    const std::string base = ",psi" + std::to_string(i) + "_";
    out += base + "r";
    for (int j = 1; j < n; ++j) out += base + std::to_string(j);
  }
  out += ",u";
  for (int i = 1; i <= p.agents; ++i) out += ",u_" + std::to_string(i);
  out += '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row{traj.times[k]};
    row.insert(row.end(), traj.states[k].begin(), traj.states[k].end());
    row.push_back(traj.regulator_input[k]);
    row.insert(row.end(), traj.actions[k].begin(), traj.actions[k].end());
    AppendRow(out, row);
  }
  return out;
}

std::string TrajectorySummary(const GbcsParams& p, const Trajectory& traj) {
  std::ostringstream os;
  const auto& last = traj.states.back();
  os << "nodes: " << traj.times.size() << ", horizon: " << FormatNumber(p.horizon) << "\n"
     << "X(Tf):";
  for (int j = 0; j < p.n(); ++j) os << " " << FormatNumber(last[j]);
  os << "\ncost per player:";
  for (int i = 1; i <= p.agents; ++i) os << " " << FormatNumber(Cost(p, traj, i));
  os << "\n";
  return os.str();
}

std::string RiccatiCsv(const GbcsParams& p, const RiccatiSolution& sol) {
  const int n = p.n();
  std::string out = "t";
  for (int i = 1; i <= p.agents; ++i)
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c)
        out += ",k" + std::to_string(i) + "_" + std::to_string(r) + "_" + std::to_string(c);
  out += '\n';
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    std::vector<double> row{sol.times[k]};
    for (int i = 0; i < p.agents; ++i)
      for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) row.push_back(sol.k[i][k](r, c));
    AppendRow(out, row);
  }
  return out;
}

std::string RiccatiSummary(const GbcsParams& p, const RiccatiSolution& sol) {
  std::ostringstream os;
  os << "nodes: " << sol.times.size() << ", max asymmetry removed: "
     << FormatNumber(sol.max_asymmetry_removed) << "\n";
  for (int i = 1; i <= p.agents; ++i) {
    os << "K" << i << "(0):\n" << linalg::ToString(sol.k[i - 1].front(), 10) << "\n";
  }
  return os.str();
}

std::string NashJson(const NashReport& r) {
  json doc = {{"seed", r.seed},
              {"trials", r.trials},
              {"eps", r.eps},
              {"threshold", r.threshold},
              {"equilibrium_cost", r.equilibrium_cost},
              {"delta_cost", r.delta_cost},
              {"min_delta", r.min_delta},
              {"certified", r.certified}};
  return doc.dump(2) + "\n";
}

std::string NashSummary(const NashReport& r) {
  std::ostringstream os;
  os << "seed " << r.seed << ", " << r.trials << " perturbations per player, eps "
     << FormatNumber(r.eps) << "\n";
  for (std::size_t i = 0; i < r.delta_cost.size(); ++i) {
    double worst = r.delta_cost[i].empty() ? 0.0 : r.delta_cost[i].front();
    for (double d : r.delta_cost[i]) worst = std::min(worst, d);
    os << "player " << i + 1 << ": J = " << FormatNumber(r.equilibrium_cost[i])
       << ", min dJ = " << FormatNumber(worst) << "\n";
  }
  os << "certified: " << Bool(r.certified) << " (min dJ " << FormatNumber(r.min_delta)
     << " vs threshold " << FormatNumber(r.threshold) << ")\n";
  return os.str();
}

std::string ScanCsv(const ScanResult& r) {
  std::string out =
      "graph_id,h,edges,sep_nontrivial,t_rows_equal,thm2_uncontrollable,controllable,"
      "projected_rank,classification\n";
  for (const ScanRecord& rec : r.records) {
    out += std::to_string(rec.graph_id) + "," + std::to_string(rec.h) + "," +
           FormatEdges(rec.edges) + "," + Bool(rec.sep_nontrivial) + "," +
           Bool(rec.t_rows_equal) + "," + Bool(rec.thm2_uncontrollable) + "," +
           Bool(rec.controllable) + "," + std::to_string(rec.projected_rank) + "," +
           std::string(ClassificationName(rec.classification)) + "\n";
  }
  return out;
}

std::string ScanSummaryText(const ScanResult& r) {
  const ScanSummary& s = r.summary;
  std::ostringstream os;
  os << "h = " << r.h << ": " << s.graphs << " graphs\n"
     << "  consistent: " << s.consistent << "\n"
     << "  THEOREM_VIOLATION: " << s.theorem_violations << "\n"
     << "  CONJECTURE_COUNTEREXAMPLE: " << s.conjecture_counterexamples << "\n"
     << "  NUMERIC_FAILURE: " << s.numeric_failures << "\n";
  for (const ScanRecord& rec : r.records) {
    if (rec.classification == Classification::kConsistent) continue;
    os << ClassificationName(rec.classification) << " graph " << rec.graph_id << " ["
       << FormatEdges(rec.edges) << "]";
    if (!rec.failure.empty()) os << ": " << rec.failure;
    os << "\n";
  }
  return os.str();
}

std::string SepSummary(const Partition& sep, int iterations) {
  return "coarsest SEP: " + FormatPartition(sep) + " (" + std::to_string(iterations) +
         " refinement rounds)\n";
}

}  // namespace gbcs
