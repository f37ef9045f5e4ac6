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

// gbcs-lab: command-line front end over the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gbcs/gbcs.h"

namespace {

constexpr int kExitUsage = 1;

struct Outputs {
  std::string json;
  std::string csv;
};

int Report(gbcs_status status) {
  std::cerr << "gbcs-lab: " << gbcs_last_error() << "\n";
  return static_cast<int>(status);
}

bool WriteFile(const std::string& path, const char* text, const char* kind) {
  if (text == nullptr) {
    std::cerr << "gbcs-lab: this command has no " << kind << " output\n";
    return false;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "gbcs-lab: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

// Prints the summary and writes any requested machine formats.
int Finish(gbcs_status status, gbcs_result* result, const Outputs& outputs) {
  if (status != GBCS_OK) return Report(status);
  std::cout << gbcs_result_text(result, GBCS_FORMAT_SUMMARY);
  bool ok = true;
  if (!outputs.json.empty())
    ok = WriteFile(outputs.json, gbcs_result_text(result, GBCS_FORMAT_JSON), "JSON") && ok;
  if (!outputs.csv.empty())
    ok = WriteFile(outputs.csv, gbcs_result_text(result, GBCS_FORMAT_CSV), "CSV") && ok;
  gbcs_result_free(result);
  return ok ? 0 : kExitUsage;
}

using GraphOp = gbcs_status (*)(const gbcs_topology*, const gbcs_options*, gbcs_result**);

int RunOnGraph(const std::string& path, const gbcs_options& options, const Outputs& outputs,
               GraphOp op) {
  gbcs_topology* top = nullptr;
  const gbcs_status loaded = gbcs_topology_load(path.c_str(), &top);
  if (loaded != GBCS_OK) return Report(loaded);
  gbcs_result* result = nullptr;
  const gbcs_status status = op(top, &options, &result);
  gbcs_topology_free(top);
  return Finish(status, result, outputs);
}

gbcs_status Smatrix(const gbcs_topology* t, const gbcs_options*, gbcs_result** out) {
  return gbcs_smatrix_report(t, out);
}

gbcs_status Sep(const gbcs_topology* t, const gbcs_options*, gbcs_result** out) {
  return gbcs_sep_report(t, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-based control system toolkit: controllability analysis, "
               "equilibrium machinery and small-graph scans"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", gbcs_version());

  gbcs_options options;
  gbcs_options_init(&options);
  Outputs outputs;
  app.add_option("--tf", options.tf, "Horizon length")->capture_default_str();
  app.add_option("--steps", options.steps, "Integration steps")->capture_default_str();
  app.add_option("--rank-tol", options.rank_tol,
                 "Singular value threshold for rank decisions (<= 0: automatic)");
  app.add_option("--t-tol", options.t_tol, "Tolerance for equal T rows")->capture_default_str();
  app.add_option("--seed", options.seed, "Seed for the deviation perturbations")
      ->capture_default_str();
  app.add_option("--q", options.q_weight, "Running state weight, Q_i = q I")
      ->capture_default_str();
  app.add_option("--qt", options.qt_weight, "Terminal state weight, Q_iT = qt I")
      ->capture_default_str();
  app.add_option("--r", options.r_weight, "Control weight R_i")->capture_default_str();
  app.add_option("--json", outputs.json, "Write the JSON report to this path");
  app.add_option("--csv", outputs.csv, "Write the CSV table to this path");

  std::string graph;
  auto graph_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("graph", graph, "Graph file (.json or line format)")->required();
    return sub;
  };
  CLI::App* analyze = graph_command("analyze", "Controllability report");
  CLI::App* smatrix = graph_command("smatrix", "Strategy matrix");
  CLI::App* sep = graph_command("sep", "Coarsest strategy-equivalent partition");
  CLI::App* riccati = graph_command("riccati", "Riccati gains on the time grid");
  CLI::App* simulate = graph_command("simulate", "Equilibrium trajectory");
  CLI::App* nash = graph_command("nash-check", "Unilateral deviation test");
  for (CLI::App* sub : {simulate, nash}) {
    sub->add_option("--z", options.regulator_input, "Constant regulator input")
        ->capture_default_str();
    sub->add_option("--x0", options.x0_value, "Value of every initial state entry")
        ->capture_default_str();
  }
  nash->add_option("--trials", options.trials, "Perturbations per player")
      ->capture_default_str();
  nash->add_option("--eps", options.eps, "Perturbation size")->capture_default_str();

  CLI::App* scan = app.add_subcommand("scan", "Exhaustive scan over all graphs on h agents");
  int agents = 0;
  bool dedup = false;
  bool allow_large = false;
  scan->add_option("--agents", agents, "Number of agents h")->required();
  scan->add_flag("--dedup", dedup, "One graph per isomorphism class");
  scan->add_flag("--allow-large", allow_large, "Permit h = 7");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*analyze) return RunOnGraph(graph, options, outputs, gbcs_analyze);
  if (*smatrix) return RunOnGraph(graph, options, outputs, Smatrix);
  if (*sep) return RunOnGraph(graph, options, outputs, Sep);
  if (*riccati) return RunOnGraph(graph, options, outputs, gbcs_riccati);
  if (*simulate) return RunOnGraph(graph, options, outputs, gbcs_simulate);
  if (*nash) return RunOnGraph(graph, options, outputs, gbcs_nash_check);

  options.dedup = dedup ? 1 : 0;
  options.allow_large = allow_large ? 1 : 0;
  gbcs_result* result = nullptr;
  const gbcs_status status = gbcs_scan(agents, &options, &result);
  return Finish(status, result, outputs);
}
