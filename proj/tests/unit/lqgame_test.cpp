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

#include <gtest/gtest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/lqgame.hpp"
#include "support/oracles.hpp"

namespace gbcs {
namespace {

using linalg::Matrix;
using testing::Complete;
using testing::Edgeless;
using testing::Path;

Matrix Ones(std::size_t r, std::size_t c) { return Matrix(r, c, std::vector<double>(r * c, 1.0)); }

std::vector<double> Column(std::initializer_list<double> v) { return v; }

// Terminal-condition residual of y' = M y + N z from y(0), propagated with
// the series exponential and a fine trapezoid for the forcing.
double BoundaryResidual(const GbcsParams& p, const std::vector<double>& y0,
                        std::span<const double> x0) {
  const Matrix y_t = testing::SeriesExpm(GameMatrixM(p) * p.horizon) * Matrix::Column(y0);
  const std::size_t n = p.n();
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) worst = std::max(worst, std::abs(y0[r] - x0[r]));
  const Matrix x_t = y_t.Block(0, 0, n, 1);
  for (int i = 1; i <= p.agents; ++i) {
    const Matrix gap = y_t.Block(i * n, 0, n, 1) - p.q_terminal[i - 1] * x_t;
    worst = std::max(worst, gap.MaxAbs());
  }
  return worst;
}

TEST(DefaultParamsTest, Examples) {
  const GbcsParams one = DefaultParams(Edgeless(1));
  EXPECT_EQ(one.n(), 2);
  EXPECT_EQ(one.b_vectors[0], Ones(2, 1));
  EXPECT_EQ(one.b_tilde, Ones(2, 1));
  EXPECT_EQ(one.a_tilde, Matrix::Identity(2));
  EXPECT_EQ(one.q[0], Matrix::Identity(2));
  EXPECT_EQ(one.q_terminal[0], Matrix::Identity(2));
  EXPECT_EQ(one.r[0], 1.0);
  EXPECT_EQ(one.c, Matrix(2, 1));
  EXPECT_EQ(one.horizon, 1.0);

  const GbcsParams two = DefaultParams(Edgeless(2));
  EXPECT_EQ(two.b_vectors[0], Matrix::FromRows({{1}, {1}, {0}}));
  EXPECT_EQ(two.b_vectors[1], Matrix::FromRows({{1}, {0}, {1}}));

  ParamOverrides ov;
  ov.horizon = 2.0;
  const GbcsParams longer = DefaultParams(Edgeless(2), ov);
  EXPECT_EQ(longer.horizon, 2.0);
  EXPECT_EQ(longer.a_tilde, two.a_tilde);
  EXPECT_EQ(longer.q, two.q);
}

TEST(DefaultParamsTest, RejectsBadOverrides) {
  ParamOverrides wrong_size;
  wrong_size.a_tilde = Matrix::Identity(4);
  EXPECT_THROW(DefaultParams(Edgeless(2), wrong_size), UsageError);
  ParamOverrides asymmetric;
  asymmetric.q = std::vector<Matrix>{Matrix::FromRows({{1, 1}, {0, 1}})};
  EXPECT_THROW(DefaultParams(Edgeless(1), asymmetric), UsageError);
  ParamOverrides negative;
  negative.r = std::vector<double>{-1.0};
  EXPECT_THROW(DefaultParams(Edgeless(1), negative), UsageError);
  ParamOverrides zero_horizon;
  zero_horizon.horizon = 0.0;
  EXPECT_THROW(DefaultParams(Edgeless(1), zero_horizon), UsageError);
}

TEST(ParamsDigestTest, StableAndSensitive) {
  const GbcsParams p = DefaultParams(Path(3));
  EXPECT_EQ(ParamsDigest(p), ParamsDigest(DefaultParams(Path(3))));
  EXPECT_EQ(ParamsDigest(p).size(), 16U);
  ParamOverrides ov;
  ov.horizon = 1.5;
  EXPECT_NE(ParamsDigest(p), ParamsDigest(DefaultParams(Path(3), ov)));
}

TEST(AssembleAugmentedTest, SingleAgentBlocks) {
  const AugmentedSystem sys = AssembleAugmented(DefaultParams(Edgeless(1)));
  const Matrix expected = Matrix::FromRows(
      {{1, 0, 1, 1}, {0, 1, 1, 1}, {1, 0, -1, 0}, {0, 1, 0, -1}});
  EXPECT_EQ(sys.a_bar, expected);
  EXPECT_EQ(sys.b_bar, Matrix::FromRows({{1}, {1}, {0}, {0}}));
}

TEST(AssembleAugmentedTest, BlockMapIsExhaustive) {
  ParamOverrides ov;
  ov.a_tilde = Matrix::FromRows({{0.5, 1, 0}, {0, -1, 2}, {1, 0, 0.25}});
  ov.c = Matrix::FromRows({{0.1}, {-0.2}, {0.3}});
  ov.r = std::vector<double>{2.0, 0.5};
  ov.q = std::vector<Matrix>{Matrix::FromRows({{2, 1, 0}, {1, 2, 0}, {0, 0, 1}}),
                             Matrix::FromRows({{1, 0, 0}, {0, 3, 1}, {0, 1, 1}})};
  const GbcsParams p = DefaultParams(Path(2), ov);
  const AugmentedSystem sys = AssembleAugmented(p);
  const std::size_t n = 3;
  for (int bi = 0; bi <= 2; ++bi) {
    for (int bj = 0; bj <= 2; ++bj) {
      const Matrix block = sys.a_bar.Block(bi * n, bj * n, n, n);
      Matrix expected(n, n);
      if (bi == 0 && bj == 0) expected = p.a_tilde;
      else if (bi == 0) expected = p.b_vectors[bj - 1] * (1.0 / p.r[bj - 1]) * (p.b_vectors[bj - 1] + p.c).Transpose();
      else if (bj == 0) expected = p.q[bi - 1];
      else if (bi == bj) expected = -p.a_tilde.Transpose();
      EXPECT_LE(linalg::MaxAbsDiff(block, expected), 1e-15) << bi << "," << bj;
    }
  }
  // The top block of A_bar B_bar is A b.
  const Matrix ab = sys.a_bar * sys.b_bar;
  EXPECT_LE(linalg::MaxAbsDiff(ab.Block(0, 0, n, 1), p.a_tilde * p.b_tilde), 1e-15);
  // Coupling is non-symmetric once C is nonzero.
  EXPECT_GT(linalg::MaxAbsDiff(p.CouplingMatrix(1), p.CouplingMatrix(1).Transpose()), 0.0);
}

TEST(AssembleAugmentedTest, NoCrossCostateCoupling) {
  const AugmentedSystem sys = AssembleAugmented(DefaultParams(Complete(2)));
  EXPECT_EQ(sys.a_bar.Block(3, 6, 3, 3), Matrix(3, 3));
  EXPECT_EQ(sys.a_bar.Block(6, 3, 3, 3), Matrix(3, 3));
}

TEST(GameMatrixMTest, SingleAgent) {
  const Matrix m = GameMatrixM(DefaultParams(Edgeless(1)));
  const Matrix expected = Matrix::FromRows(
      {{1, 0, -1, -1}, {0, 1, -1, -1}, {-1, 0, -1, 0}, {0, -1, 0, -1}});
  EXPECT_EQ(m, expected);
}

TEST(GameMatrixMTest, ZeroRunningWeights) {
  ParamOverrides ov;
  ov.q = std::vector<Matrix>(3, Matrix(4, 4));
  const GbcsParams p = DefaultParams(Path(3), ov);
  const Matrix m = GameMatrixM(p);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      const Matrix block = m.Block(i * 4, j * 4, 4, 4);
      EXPECT_EQ(block, i == j ? -p.a_tilde.Transpose() : Matrix(4, 4));
    }
  }
}

TEST(GameMatrixMTest, SignFlipRelatesConventions) {
  const GbcsParams p = DefaultParams(Path(3));
  Matrix d = Matrix::Identity(16);
  for (std::size_t i = 4; i < 16; ++i) d(i, i) = -1.0;
  EXPECT_LE(linalg::MaxAbsDiff(d * GameMatrixM(p) * d, AssembleAugmented(p).a_bar), 0.0);
}

TEST(RiccatiTest, ZeroWeightsStayZero) {
  ParamOverrides ov;
  ov.q = std::vector<Matrix>(2, Matrix(3, 3));
  ov.q_terminal = std::vector<Matrix>(2, Matrix(3, 3));
  const RiccatiSolution sol = RiccatiSolve(DefaultParams(Path(2), ov), 50);
  for (const auto& player : sol.k)
    for (const Matrix& k : player) EXPECT_EQ(k.MaxAbs(), 0.0);
}

TEST(RiccatiTest, LinearSurrogate) {
  // A = 0 and no coupling: K' = -Q integrates to K(0) = Q Tf + K(Tf).
  GbcsParams p = DefaultParams(Edgeless(1));
  p.a_tilde = Matrix(2, 2);
  p.b_vectors[0] = Matrix(2, 1);
  p.q_terminal[0] = Matrix(2, 2);
  const RiccatiSolution sol = RiccatiSolve(p, 10);
  EXPECT_NEAR(sol.k[0].front()(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(sol.k[0].front()(1, 1), 1.0, 1e-14);
  EXPECT_NEAR(sol.k[0][5](0, 0), 0.5, 1e-14);
}

TEST(RiccatiTest, TerminalExactAndSelfConvergent) {
  const GbcsParams p = DefaultParams(Edgeless(1));
  const RiccatiSolution coarse = RiccatiSolve(p, 1000);
  const RiccatiSolution fine = RiccatiSolve(p, 2000);
  EXPECT_EQ(coarse.k[0].back(), p.q_terminal[0]);
  EXPECT_DOUBLE_EQ(coarse.times.back(), p.horizon);
  EXPECT_LE(linalg::MaxAbsDiff(coarse.k[0].front(), fine.k[0].front()), 1e-8);
  EXPECT_LE(coarse.max_asymmetry_removed, 1e-9);
}

TEST(RiccatiTest, ResidualIsSecondOrder) {
  for (int h : {1, 2}) {
    const GbcsParams p = DefaultParams(Edgeless(h));
    // Centred difference at t = Tf / 2 against the right-hand side.
    auto residual = [&](int steps) {
      const RiccatiSolution sol = RiccatiSolve(p, steps);
      const int mid = steps / 2;
      const double dt = p.horizon / steps;
      double worst = 0.0;
      for (int i = 1; i <= h; ++i) {
        const Matrix fd = (sol.k[i - 1][mid + 1] - sol.k[i - 1][mid - 1]) * (0.5 / dt);
        worst = std::max(worst, linalg::MaxAbsDiff(fd, RiccatiRhs(p, i, sol.k[i - 1][mid])));
      }
      return worst;
    };
    const double ratio = residual(40) / residual(80);
    EXPECT_GE(ratio, 3.0) << "H = " << h;
    EXPECT_LE(ratio, 5.0) << "H = " << h;
  }
}

TEST(RiccatiTest, FiniteEscapeNamesTime) {
  // K' = K^2 - 1 type growth with a large terminal weight blows up backwards.
  ParamOverrides ov;
  ov.a_tilde = Matrix::Identity(2) * -30.0;
  ov.q_terminal = std::vector<Matrix>{Matrix::Identity(2) * -1e3};
  ov.horizon = 5.0;
  try {
    RiccatiSolve(DefaultParams(Edgeless(1), ov), 100);
    FAIL() << "expected finite escape";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("t="), std::string::npos) << e.what();
  }
  EXPECT_THROW(RiccatiSolve(DefaultParams(Edgeless(1)), 9), UsageError);
}

TEST(HMatrixTest, NilpotentClosedForm) {
  for (const Topology& t : {Edgeless(2), Path(3), Complete(3)}) {
    ParamOverrides ov;
    const int h = t.agent_count();
    ov.a_tilde = Matrix(h + 1, h + 1);
    ov.q = std::vector<Matrix>(h, Matrix(h + 1, h + 1));
    ov.horizon = 0.7;
    const GbcsParams p = DefaultParams(t, ov);
    Matrix expected = Matrix::Identity(h + 1);
    for (int i = 1; i <= h; ++i) expected += p.CouplingMatrix(i) * p.q_terminal[i - 1] * 0.7;
    const HMatrixResult r = HMatrix(p);
    EXPECT_LE(linalg::MaxAbsDiff(r.h, expected), 1e-10);
    EXPECT_TRUE(r.invertible);
  }
}

TEST(HMatrixTest, ShortHorizonIsIdentity) {
  ParamOverrides ov;
  ov.horizon = 1e-12;
  const HMatrixResult r = HMatrix(DefaultParams(Path(3), ov));
  EXPECT_LE(linalg::MaxAbsDiff(r.h, Matrix::Identity(4)), 1e-10);
  EXPECT_TRUE(r.invertible);
}

TEST(HMatrixTest, MatchesSeriesOracle) {
  const GbcsParams p = DefaultParams(Edgeless(1));
  const Matrix e = testing::SeriesExpm(GameMatrixM(p) * -p.horizon);
  const Matrix stack = linalg::VStack({Matrix::Identity(2), p.q_terminal[0]});
  const Matrix expected = e.Block(0, 0, 2, 4) * stack;
  EXPECT_LE(linalg::MaxAbsDiff(HMatrix(p).h, expected), 1e-10);
}

TEST(SampledSignalTest, InterpolatesAndClamps) {
  SampledSignal s{0.0, 2.0, {0.0, 2.0, 6.0}};
  EXPECT_DOUBLE_EQ(s.At(0.5), 1.0);
  EXPECT_DOUBLE_EQ(s.At(1.5), 4.0);
  EXPECT_DOUBLE_EQ(s.At(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(s.At(3.0), 6.0);
  const SampledSignal c = SampledSignal::Constant(2.5, 1.0, 4);
  EXPECT_EQ(c.values.size(), 5U);
  EXPECT_DOUBLE_EQ(c.At(0.33), 2.5);
}

TEST(SolveBvpTest, StaticSystemPullsBackTerminalWeights) {
  GbcsParams p = DefaultParams(Edgeless(2));
  p.a_tilde = Matrix(3, 3);
  for (auto& b : p.b_vectors) b = Matrix(3, 1);
  for (auto& q : p.q) q = Matrix(3, 3);
  p.q_terminal = {Matrix::Identity(3) * 2.0, Matrix::FromRows({{1, 1, 0}, {1, 3, 0}, {0, 0, 1}})};
  const std::vector<double> x0 = Column({1.0, -2.0, 0.5});
  const auto y0 = SolveBvp(p, x0, SampledSignal::Constant(0.0, 1.0, 10));
  std::vector<double> expected = x0;
  for (const Matrix& qt : p.q_terminal) {
    const auto qx = qt * std::span<const double>(x0);
    expected.insert(expected.end(), qx.begin(), qx.end());
  }
  ASSERT_EQ(y0.size(), expected.size());
  for (std::size_t i = 0; i < y0.size(); ++i) EXPECT_NEAR(y0[i], expected[i], 1e-12);
}

TEST(SolveBvpTest, NoForcingWithoutC) {
  const GbcsParams p = DefaultParams(Path(3));
  const std::vector<double> x0 = Column({1, 0, -1, 2});
  SampledSignal wave{0.0, 1.0, {}};
  for (int k = 0; k <= 100; ++k) wave.values.push_back(std::sin(7.0 * k / 100.0));
  const auto a = SolveBvp(p, x0, SampledSignal::Constant(0.0, 1.0, 100));
  const auto b = SolveBvp(p, x0, wave);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(SolveBvpTest, BoundaryResidual) {
  const GbcsParams p = DefaultParams(Edgeless(1));
  const std::vector<double> x0 = Column({1.0, 0.0});
  const auto y0 = SolveBvp(p, x0, SampledSignal::Constant(0.0, 1.0, 100));
  EXPECT_LE(BoundaryResidual(p, y0, x0), 1e-7);
  for (const Topology& t : {Path(3), Complete(3)}) {
    const GbcsParams q = DefaultParams(t);
    const std::vector<double> x = Column({0.5, 1.0, -1.0, 2.0});
    EXPECT_LE(BoundaryResidual(q, SolveBvp(q, x, SampledSignal::Constant(0.0, 1.0, 50)), x),
              1e-7);
  }
}

TEST(SolveBvpTest, ForcedResidualWithRegulatorInput) {
  // Nonzero z through b: the costate terminal condition still holds at Tf.
  for (const Topology& t : {Edgeless(2), Path(3), Complete(3)}) {
    const GbcsParams p = DefaultParams(t);
    const std::vector<double> x0(p.n(), 1.0);
    const Trajectory traj =
        EquilibriumTrajectory(p, x0, SampledSignal::Constant(1.0, 1.0, 400), 400);
    const auto& last = traj.states.back();
    const std::size_t n = p.n();
    const Matrix x_t = Matrix::Column(std::span<const double>(last).subspan(0, n));
    for (int i = 1; i <= p.agents; ++i) {
      const Matrix psi = Matrix::Column(std::span<const double>(last).subspan(i * n, n));
      EXPECT_LE(linalg::MaxAbsDiff(psi, -(p.q_terminal[i - 1] * x_t)), 1e-6);
    }
    for (std::size_t r = 0; r < n; ++r) EXPECT_NEAR(traj.states.front()[r], x0[r], 1e-9);
  }
}

TEST(SolveBvpTest, RejectsMismatchedInput) {
  const GbcsParams p = DefaultParams(Edgeless(1));
  EXPECT_THROW(SolveBvp(p, Column({1.0}), SampledSignal::Constant(0.0, 1.0, 10)), UsageError);
  EXPECT_THROW(SolveBvp(p, Column({1.0, 0.0}), SampledSignal::Constant(0.0, 2.0, 10)),
               UsageError);
}

TEST(SimulateTest, ZeroStaysZero) {
  const GbcsParams p = DefaultParams(Path(2));
  const std::vector<double> y0(9, 0.0);
  const Trajectory traj =
      Simulate(p, AssembleAugmented(p), y0, SampledSignal::Constant(0.0, 1.0, 10), 20);
  for (const auto& s : traj.states)
    for (double v : s) EXPECT_EQ(v, 0.0);
  for (const auto& a : traj.actions)
    for (double v : a) EXPECT_EQ(v, 0.0);
}

TEST(SimulateTest, LinearDriftWithoutDynamics) {
  const GbcsParams p = DefaultParams(Edgeless(1));
  AugmentedSystem sys = AssembleAugmented(p);
  sys.a_bar = Matrix(4, 4);
  const std::vector<double> y0 = Column({1, 2, 3, 4});
  const Trajectory traj = Simulate(p, sys, y0, SampledSignal::Constant(0.5, 1.0, 10), 10);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    EXPECT_NEAR(traj.states[k][0], 1 + 0.5 * t, 1e-14);
    EXPECT_NEAR(traj.states[k][1], 2 + 0.5 * t, 1e-14);
    EXPECT_NEAR(traj.states[k][2], 3.0, 1e-14);
    EXPECT_DOUBLE_EQ(traj.regulator_input[k], 0.5);
    // u_1 = R^{-1} (b_1 + c)^T psi_1
    EXPECT_NEAR(traj.actions[k][0], 3.0 + 4.0, 1e-14);
  }
}

TEST(SimulateTest, StepDoublingConverges) {
  const GbcsParams p = DefaultParams(Complete(2));
  const std::vector<double> x0(3, 1.0);
  const SampledSignal u = SampledSignal::Constant(1.0, 1.0, 100);
  const Trajectory a = EquilibriumTrajectory(p, x0, u, 200);
  const Trajectory b = EquilibriumTrajectory(p, x0, u, 400);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k)
    for (std::size_t r = 0; r < a.states[k].size(); ++r)
      worst = std::max(worst, std::abs(a.states[k][r] - b.states[2 * k][r]));
  EXPECT_LE(worst, 1e-7);
}

TEST(CostTest, ZeroAndConstant) {
  const GbcsParams p = DefaultParams(Edgeless(2));
  Trajectory zero;
  for (int k = 0; k <= 10; ++k) {
    zero.times.push_back(k / 10.0);
    zero.states.emplace_back(9, 0.0);
    zero.regulator_input.push_back(0.0);
    zero.actions.emplace_back(2, 0.0);
  }
  EXPECT_EQ(Cost(p, zero, 1), 0.0);

  Trajectory constant = zero;
  for (auto& s : constant.states) {
    s[0] = 1.0;
    s[1] = -2.0;
    s[2] = 0.5;
  }
  GbcsParams no_terminal = p;
  no_terminal.q_terminal = {Matrix(3, 3), Matrix(3, 3)};
  EXPECT_NEAR(Cost(no_terminal, constant, 2), 0.5 * 5.25, 1e-14);
  // Terminal weight I adds half the squared norm once more.
  EXPECT_NEAR(Cost(p, constant, 2), 5.25, 1e-14);
}

TEST(CostTest, SimpsonMatchesTrapezoidOnSmoothPaths) {
  const GbcsParams p = DefaultParams(Path(3));
  const Trajectory traj = EquilibriumTrajectory(
      p, std::vector<double>(4, 1.0), SampledSignal::Constant(1.0, 1.0, 2000), 2000);
  for (int i = 1; i <= 3; ++i) {
    EXPECT_GE(Cost(p, traj, i), 0.0);
    EXPECT_NEAR(Cost(p, traj, i), CostTrapezoid(p, traj, i), 1e-6);
  }
}

TEST(NashCheckTest, ZeroEpsGivesZeroDelta) {
  NashCheckOptions opt;
  opt.eps = 0.0;
  opt.trials = 3;
  opt.steps = 200;
  const NashReport r = NashDeviationCheck(DefaultParams(Path(2)), std::vector<double>(3, 1.0),
                                          SampledSignal::Constant(1.0, 1.0, 200), opt);
  for (const auto& player : r.delta_cost)
    for (double d : player) EXPECT_EQ(d, 0.0);
  EXPECT_TRUE(r.certified);
}

TEST(NashCheckTest, CertifiesWithoutRegulatorInput) {
  const NashReport r =
      NashDeviationCheck(DefaultParams(Edgeless(1)), Column({1.0, 0.5}),
                         SampledSignal::Constant(0.0, 1.0, 1000), NashCheckOptions{});
  EXPECT_TRUE(r.certified) << r.min_delta;
  EXPECT_EQ(r.delta_cost.size(), 1U);
  EXPECT_EQ(r.delta_cost[0].size(), 20U);
}

TEST(NashCheckTest, CertifiesWithRegulatorInput) {
  const NashReport r =
      NashDeviationCheck(DefaultParams(Complete(2)), std::vector<double>(3, 1.0),
                         SampledSignal::Constant(1.0, 1.0, 1000), NashCheckOptions{});
  EXPECT_TRUE(r.certified) << r.min_delta;
  EXPECT_GE(r.min_delta, -1e-6);
}

TEST(NashCheckTest, DeviationsCostRoughlyQuadratically) {
  // Around a minimiser the cost increase scales like eps^2.
  NashCheckOptions small;
  small.trials = 4;
  small.eps = 1e-2;
  NashCheckOptions large = small;
  large.eps = 2e-2;
  const GbcsParams p = DefaultParams(Path(3));
  const std::vector<double> x0(4, 1.0);
  const SampledSignal z = SampledSignal::Constant(1.0, 1.0, 1000);
  const NashReport a = NashDeviationCheck(p, x0, z, small);
  const NashReport b = NashDeviationCheck(p, x0, z, large);
  for (std::size_t i = 0; i < a.delta_cost.size(); ++i)
    for (std::size_t k = 0; k < a.delta_cost[i].size(); ++k)
      EXPECT_NEAR(b.delta_cost[i][k] / a.delta_cost[i][k], 4.0, 0.05);
}

TEST(NashCheckTest, SeedIsReproducible) {
  NashCheckOptions opt;
  opt.trials = 5;
  const GbcsParams p = DefaultParams(Path(2));
  const std::vector<double> x0(3, 1.0);
  const SampledSignal z = SampledSignal::Constant(1.0, 1.0, 1000);
  const NashReport a = NashDeviationCheck(p, x0, z, opt);
  const NashReport b = NashDeviationCheck(p, x0, z, opt);
  EXPECT_EQ(a.delta_cost, b.delta_cost);
  EXPECT_EQ(a.seed, opt.seed);
}

}  // namespace
}  // namespace gbcs
