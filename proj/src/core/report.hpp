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

// Text renderings of the analysis results: JSON reports, CSV tables and the
// short human-readable summaries the command line prints.

#pragma once

#include <string>
#include <vector>

#include "core/controllability.hpp"
#include "core/lqgame.hpp"
#include "core/scan.hpp"
#include "core/strategy.hpp"

namespace gbcs {

// "1-2;2-3", empty for an edgeless graph.
std::string FormatEdges(const std::vector<Edge>& edges);

// Shortest round-trip decimal for a double ("%.17g" then trimmed).
std::string FormatNumber(double v);

std::string StrategyMatrixText(const StrategyMatrix& s);

std::string ReportJson(const ControllabilityReport& r);
std::string ReportSummary(const ControllabilityReport& r);

// t, x_r, x_1..x_H, psi<i>_r, psi<i>_1.. per player, u, u_1..u_H.
std::string TrajectoryCsv(const GbcsParams& p, const Trajectory& traj);
std::string TrajectorySummary(const GbcsParams& p, const Trajectory& traj);

// t, then k<player>_<row>_<col> over the upper triangle of every gain.
std::string RiccatiCsv(const GbcsParams& p, const RiccatiSolution& sol);
std::string RiccatiSummary(const GbcsParams& p, const RiccatiSolution& sol);

std::string NashJson(const NashReport& r);
std::string NashSummary(const NashReport& r);

std::string ScanCsv(const ScanResult& r);
std::string ScanSummaryText(const ScanResult& r);

std::string SepSummary(const Partition& sep, int iterations);

}  // namespace gbcs
