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

// Controllability of the augmented game system: the raw Kalman matrix, the
// closed-form block recursion for its columns, the terminal-weighting matrix
// T, the partition-based uncontrollability test and the projected
// full-row-rank criterion.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/lqgame.hpp"
#include "core/strategy.hpp"
#include "core/topology.hpp"

namespace gbcs {

// Columns b_bar, A b_bar, ..., A^{n^2 - 1} b_bar; no normalisation.
Matrix KalmanMatrix(const AugmentedSystem& sys);

class BlockTable {
 public:
  BlockTable(int agents, std::size_t n);
  // p in 1..H+1 (block row), q in 1..n^2 (column); each block is n x 1.
  const Matrix& at(int p, int q) const { return blocks_[p - 1][q - 1]; }
  Matrix& at(int p, int q) { return blocks_[p - 1][q - 1]; }
  int block_rows() const noexcept { return agents_ + 1; }
  int columns() const noexcept { return static_cast<int>(n_ * n_); }
  // n^2 x n^2 matrix, column q = (Q_1q; ...; Q_{H+1,q}).
  Matrix Stacked() const;

 private:
  int agents_;
  std::size_t n_;
  std::vector<std::vector<Matrix>> blocks_;
};

// Requires Q_i A = A^T Q_i (within 1e-12) for every player; throws
// UsageError otherwise.
BlockTable RecursionBlocks(const GbcsParams& p);

struct RecursionComparison {
  bool matches = false;
  double max_deviation = 0.0;
};

RecursionComparison RecursionMatchesDirect(const GbcsParams& p, double tol);

// [I 0] e^{-A_bar Tf} stack(I, -Q_1T, ..., -Q_HT) (0_{1xH}; I_H), (H+1) x H.
Matrix TMatrix(const GbcsParams& p);
Matrix TMatrixFrom(const GbcsParams& p, const Matrix& a_bar);

// Largest pairwise absolute row difference inside each cell (0 for singletons).
std::vector<double> CellRowDeviation(const Matrix& m, const Partition& partition);

struct PartitionVerdict {
  Partition sep;
  std::vector<double> t_row_deviation_per_cell;
  bool sep_nontrivial = false;
  bool t_rows_equal = false;  // every nontrivial cell passes; false without one
  bool thm2_uncontrollable = false;
};

PartitionVerdict EvaluatePartitionVerdict(const Partition& sep, const Matrix& t, double tol);
// Throws UsageError when p was not built from top.
PartitionVerdict CheckPartitionVerdict(const Topology& top, const GbcsParams& p, double tol);

// Orthonormal basis of span{A^k b : k >= start_power}, built by Arnoldi with
// reorthogonalisation. Stops when the new direction's residual falls to
// `deflation` times its norm before projection.
std::vector<std::vector<double>> KrylovBasis(const Matrix& a, std::span<const double> b,
                                             int start_power, double deflation);

// [I 0] A^k b_bar for k = first_power .. n^2 - 1, raw.
Matrix ProjectedKalman(const AugmentedSystem& sys, std::size_t n, int first_power = 0);

struct ControllabilityDecision {
  bool controllable = false;
  int rank = 0;
  double threshold = 0.0;
};

// Full row rank test on an explicit G.
ControllabilityDecision DecideFromG(const Matrix& g, std::optional<double> tol);

struct GameControllability {
  ControllabilityDecision decision;      // rank of [ projected Krylov | T ]
  int kalman_rank = 0;                   // dim of the Krylov space
  int projected_kalman_rank = 0;         // without T
  int projected_rank_from_k1 = 0;        // G variant starting at A b_bar
  Matrix t;
};

inline constexpr double kKrylovDeflation = 1e-10;

GameControllability GameControllable(const GbcsParams& p, std::optional<double> tol,
                                     double deflation = kKrylovDeflation);

struct Tolerances {
  std::optional<double> rank;  // nullopt: automatic threshold
  double t_rows = 1e-9;
  double krylov = kKrylovDeflation;
  int riccati_steps = 1000;
};

struct ControllabilityReport {
  int agents = 0;
  std::vector<Edge> edges;
  StrategyMatrix strategy = StrategyMatrix(1);
  Partition sep;
  std::vector<double> t_row_deviation_per_cell;
  bool sep_nontrivial = false;
  bool t_rows_equal = false;
  bool assumption_holds = false;  // Riccati solvable and H(Tf) invertible
  std::string assumption_note;
  bool thm2_uncontrollable = false;
  bool thm2_applies = false;  // thm2_uncontrollable and assumption_holds
  int kalman_rank = 0;
  int projected_rank = 0;
  double rank_threshold = 0.0;
  bool controllable = false;
  int projected_kalman_rank = 0;
  int projected_rank_from_k1 = 0;
  Tolerances tolerances;
  GbcsParams params;
  std::string params_digest;
};

// thm2_applies => thm2_uncontrollable => !controllable; throws InvariantError
// when the chain breaks.
void CheckReportInvariants(const ControllabilityReport& report);

ControllabilityReport Analyze(const Topology& top, const GbcsParams& p,
                              const Tolerances& tol = {});

}  // namespace gbcs
