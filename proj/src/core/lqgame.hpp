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

// Game data for one regulator and H agents with scalar per-node states, the
// augmented state/costate system, the open-loop Nash machinery with a nonzero
// regulator input, and numerical certification of the resulting equilibrium.
//
// Two costate conventions are in play and are related by a sign flip:
//  * "phi" convention (GameMatrixM, HMatrix, SolveBvp): y = (x; phi_i),
//    u_i = -R_i^{-1} (b_i + c)^T phi_i, phi_i(T) = Q_iT x(T).
//  * "augmented" convention (AssembleAugmented, Simulate): Y = (X; psi_i),
//    psi_i = -phi_i, u_i = +R_i^{-1} (b_i + c)^T psi_i.
// ToAugmentedInitialState performs the flip.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/linalg.hpp"
#include "core/topology.hpp"

namespace gbcs {

using linalg::Matrix;

struct GbcsParams {
  int agents = 0;
  Matrix a_tilde;                  // n x n
  std::vector<Matrix> b_vectors;   // H columns, n x 1
  Matrix b_tilde;                  // n x 1, regulator input column
  Matrix c;                        // n x 1
  std::vector<Matrix> q;           // H symmetric n x n
  std::vector<Matrix> q_terminal;  // H symmetric n x n
  std::vector<double> r;           // H positive scalars
  double horizon = 1.0;

  int n() const noexcept { return agents + 1; }
  // Throws UsageError on dimension, symmetry or positivity violations.
  void Validate() const;
  // b_i R_i^{-1} (b_i + c)^T for player i in 1..H.
  Matrix CouplingMatrix(int player) const;
};

struct ParamOverrides {
  std::optional<Matrix> a_tilde;
  std::optional<Matrix> b_tilde;
  std::optional<Matrix> c;
  std::optional<std::vector<Matrix>> q;
  std::optional<std::vector<Matrix>> q_terminal;
  std::optional<std::vector<double>> r;
  std::optional<double> horizon;
};

// FNV-1a over every parameter's bit pattern, 16 hex digits.
std::string ParamsDigest(const GbcsParams& p);

// A = I, C = 0, R_i = 1, Q_i = Q_iT = I, b = ones, Tf = 1, b_i from the
// topology; any field may be overridden.
GbcsParams DefaultParams(const Topology& top, const ParamOverrides& overrides = {});

struct AugmentedSystem {
  Matrix a_bar;  // n^2 x n^2
  Matrix b_bar;  // n^2 x 1
};

AugmentedSystem AssembleAugmented(const GbcsParams& p);
Matrix GameMatrixM(const GbcsParams& p);

struct RiccatiSolution {
  std::vector<double> times;            // ascending, steps + 1 nodes on [0, Tf]
  std::vector<std::vector<Matrix>> k;   // k[player - 1][node]
  double max_asymmetry_removed = 0.0;
};

// Backward RK4 from K_i(Tf) = Q_iT, symmetrising after every step.
// Throws NumericError on finite escape (|entry| > 1e12).
RiccatiSolution RiccatiSolve(const GbcsParams& p, int steps);

// Right-hand side of the Riccati ODE for one player.
Matrix RiccatiRhs(const GbcsParams& p, int player, const Matrix& k);

struct HMatrixResult {
  Matrix h;
  double condition = 0.0;
  bool invertible = false;
};

HMatrixResult HMatrix(const GbcsParams& p);

// Uniformly sampled scalar signal on [t0, t1], linear between nodes.
struct SampledSignal {
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<double> values;  // at least two samples

  static SampledSignal Constant(double value, double t1, std::size_t intervals);
  std::size_t intervals() const noexcept { return values.size() - 1; }
  double step() const noexcept { return (t1 - t0) / static_cast<double>(intervals()); }
  double At(double t) const;
};

// Initial stack y(0) = (x0; phi_1(0); ...; phi_H(0)) of the phi-convention
// boundary value problem y' = M y + N z with N = (c; 0; ...; 0).
// Throws SingularMatrixError when no equilibrium exists.
std::vector<double> SolveBvp(const GbcsParams& p, std::span<const double> x0,
                             const SampledSignal& z);
// Same problem with an arbitrary state forcing column in place of c.
std::vector<double> SolveBvpForced(const GbcsParams& p, std::span<const double> x0,
                                   const SampledSignal& z,
                                   std::span<const double> forcing);

// phi-convention y(0) -> augmented-convention Y(0).
std::vector<double> ToAugmentedInitialState(const GbcsParams& p,
                                            std::span<const double> y0);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;   // Y = (X; psi_1; ...; psi_H)
  std::vector<double> regulator_input;
  std::vector<std::vector<double>> actions;  // u_1..u_H per node
};

// Forward RK4 of Y' = a_bar Y + b_bar u on [0, Tf].
Trajectory Simulate(const GbcsParams& p, const AugmentedSystem& sys,
                    std::span<const double> y0, const SampledSignal& u, int steps);

// Equilibrium under regulator input u: solves the boundary value problem
// forced through b_tilde (the column the regulator drives in the augmented
// system) and simulates from the flipped initial costates.
Trajectory EquilibriumTrajectory(const GbcsParams& p, std::span<const double> x0,
                                 const SampledSignal& u, int steps);

// 1/2 int (X^T Q_i X + R_i u_i^2) dt + 1/2 X(Tf)^T Q_iT X(Tf), Simpson.
double Cost(const GbcsParams& p, const Trajectory& traj, int player);
// Same functional integrated with the trapezoid rule.
double CostTrapezoid(const GbcsParams& p, const Trajectory& traj, int player);

struct NashCheckOptions {
  int trials = 20;
  double eps = 1e-3;
  std::uint64_t seed = 20240917;
  int steps = 1000;  // rounded up to even
  double threshold = -1e-6;
};

struct NashReport {
  std::uint64_t seed = 0;
  int trials = 0;
  double eps = 0.0;
  double threshold = 0.0;
  std::vector<double> equilibrium_cost;        // per player
  std::vector<std::vector<double>> delta_cost; // [player - 1][trial]
  double min_delta = 0.0;
  bool certified = false;
};

NashReport NashDeviationCheck(const GbcsParams& p, std::span<const double> x0,
                              const SampledSignal& z, const NashCheckOptions& options);

}  // namespace gbcs
