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
#include <numeric>
#include <random>

#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "support/oracles.hpp"

namespace gbcs {
namespace {

using linalg::Matrix;
using testing::RandomMatrix;

TEST(MatrixTest, RejectsNonFiniteAndEmpty) {
  EXPECT_THROW(Matrix(2, 2, {1.0, NAN, 0.0, 1.0}), UsageError);
  EXPECT_THROW(Matrix(1, 1, {INFINITY}), UsageError);
  EXPECT_THROW(Matrix(0, 3), UsageError);
  EXPECT_THROW(Matrix(2, 2, {1.0, 2.0, 3.0}), UsageError);
}

TEST(MatrixTest, ProductAndBlocks) {
  const Matrix a = Matrix::FromRows({{1, 2}, {3, 4}});
  const Matrix b = Matrix::FromRows({{0, 1}, {1, 0}});
  EXPECT_EQ(a * b, Matrix::FromRows({{2, 1}, {4, 3}}));
  const Matrix s = linalg::HStack({a, b});
  EXPECT_EQ(s.Block(0, 2, 2, 2), b);
  EXPECT_EQ(linalg::VStack({a, b}).Block(2, 0, 2, 2), b);
  EXPECT_EQ(a.Transpose()(0, 1), 3.0);
}

TEST(ExpmTest, ZeroGivesIdentity) {
  EXPECT_EQ(linalg::MaxAbsDiff(linalg::Expm(Matrix(4, 4)), Matrix::Identity(4)), 0.0);
}

TEST(ExpmTest, Diagonal) {
  const Matrix e = linalg::Expm(Matrix::FromRows({{1, 0}, {0, -1}}));
  EXPECT_NEAR(e(0, 0), std::exp(1.0), 1e-14);
  EXPECT_NEAR(e(1, 1), std::exp(-1.0), 1e-15);
  EXPECT_EQ(e(0, 1), 0.0);
}

TEST(ExpmTest, NilpotentSeriesIsExact) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    // Strictly upper block-triangular with three blocks: N^3 = 0.
    const std::size_t b = 3;
    Matrix n(3 * b, 3 * b);
    n.SetBlock(0, b, RandomMatrix(b, b, rng));
    n.SetBlock(0, 2 * b, RandomMatrix(b, b, rng));
    n.SetBlock(b, 2 * b, RandomMatrix(b, b, rng));
    const Matrix series = Matrix::Identity(3 * b) + n + 0.5 * (n * n);
    EXPECT_LE(linalg::MaxAbsDiff(linalg::Expm(n), series), 1e-12);
  }
  const Matrix simple = Matrix::FromRows({{0, 1}, {0, 0}});
  EXPECT_EQ(linalg::Expm(simple), Matrix::FromRows({{1, 1}, {0, 1}}));
}

TEST(ExpmTest, InverseProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = size(rng);
    Matrix a = RandomMatrix(n, n, rng);
    a *= 5.0 / std::max(a.Norm1(), 1e-300);
    const Matrix prod = linalg::Expm(a) * linalg::Expm(-a);
    EXPECT_LE(linalg::MaxAbsDiff(prod, Matrix::Identity(n)), 1e-9) << "n = " << n;
  }
}

TEST(ExpmTest, AgreesWithSeriesOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = RandomMatrix(6, 6, rng, -2.0, 2.0);
    const Matrix ref = testing::SeriesExpm(a);
    const Matrix got = linalg::Expm(a, 1e-12);
    EXPECT_LE(linalg::MaxAbsDiff(got, ref), 1e-12 * std::max(1.0, ref.MaxAbs()) * 10);
  }
}

TEST(ExpmTest, ArgumentChecks) {
  EXPECT_THROW(linalg::Expm(Matrix(2, 3)), UsageError);
  EXPECT_THROW(linalg::Expm(Matrix(2, 2), 1e-3), UsageError);
  EXPECT_THROW(linalg::Expm(Matrix(2, 2), 0.0), UsageError);
  EXPECT_THROW(linalg::Expm(Matrix::FromRows({{800, 0}, {0, 0}})), NumericError);
}

TEST(RankTest, Examples) {
  EXPECT_EQ(linalg::Rank(Matrix::Identity(4)).rank, 4U);
  EXPECT_EQ(linalg::Rank(Matrix(3, 3, std::vector<double>(9, 1.0))).rank, 1U);
  const Matrix dup = Matrix::FromRows({{1, 2, 3}, {1, 2, 3}, {0, 1, 5}});
  EXPECT_EQ(linalg::Rank(dup).rank, 2U);
}

TEST(RankTest, AutoThresholdRecorded) {
  const Matrix a = Matrix::FromRows({{3, 0}, {0, 1e-20}});
  const auto r = linalg::Rank(a);
  EXPECT_EQ(r.rank, 1U);
  EXPECT_DOUBLE_EQ(r.threshold, 3.0 * 2 * 1e-12);
  EXPECT_EQ(linalg::Rank(a, 1e-30).rank, 2U);
}

TEST(RankTest, InvariantUnderPermutationAndMixing) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    // 6 x 7 integer matrix of rank at most 4.
    Matrix left(6, 4), right(4, 7);
    for (double& v : left.data()) v = entry(rng);
    for (double& v : right.data()) v = entry(rng);
    const Matrix a = left * right;
    const int exact = testing::ExactRank(a);
    EXPECT_EQ(static_cast<int>(linalg::Rank(a).rank), exact);

    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix permuted(6, 7);
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 7; ++c) permuted(r, c) = a(perm[r], c);
    EXPECT_EQ(static_cast<int>(linalg::Rank(permuted).rank), exact);

    Matrix mix = RandomMatrix(6, 6, rng);
    for (std::size_t i = 0; i < 6; ++i) mix(i, i) += 4.0;  // diagonally dominant
    EXPECT_EQ(static_cast<int>(linalg::Rank(mix * a).rank), exact);
  }
}

TEST(SingularValuesTest, KnownSpectrum) {
  const Matrix a = Matrix::FromRows({{3, 0}, {0, -4}, {0, 0}});
  const auto s = linalg::SingularValues(a);
  ASSERT_EQ(s.size(), 2U);
  EXPECT_NEAR(s[0], 4.0, 1e-14);
  EXPECT_NEAR(s[1], 3.0, 1e-14);
}

TEST(SolveLinearTest, Examples) {
  const Matrix b = Matrix::FromRows({{1}, {2}, {3}});
  EXPECT_EQ(linalg::SolveLinear(Matrix::Identity(3), b).x, b);
  const auto r = linalg::SolveLinear(Matrix::FromRows({{2, 0}, {0, 4}}),
                                     Matrix::FromRows({{2}, {4}}));
  EXPECT_NEAR(r.x(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(r.x(1, 0), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(r.condition, 2.0);
}

TEST(SolveLinearTest, RandomResidual) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = RandomMatrix(8, 8, rng);
    for (std::size_t i = 0; i < 8; ++i) a(i, i) += 3.0;
    const Matrix b = RandomMatrix(8, 2, rng);
    const auto r = linalg::SolveLinear(a, b);
    ASSERT_LE(r.condition, 1e9);
    EXPECT_LE((a * r.x - b).Frobenius(), 1e-9 * b.Frobenius());
  }
}

TEST(SolveLinearTest, SingularReported) {
  const Matrix a = Matrix::FromRows({{1, 2}, {2, 4}});
  EXPECT_THROW(linalg::SolveLinear(a, Matrix::FromRows({{1}, {1}})), SingularMatrixError);
  const Matrix nearly = Matrix::FromRows({{1, 1}, {1, 1 + 1e-14}});
  try {
    linalg::SolveLinear(nearly, Matrix::FromRows({{1}, {1}}));
    FAIL() << "expected a singularity error";
  } catch (const SingularMatrixError& e) {
    EXPECT_GT(e.condition(), linalg::kSingularConditionLimit);
  }
}

TEST(Rk4Test, ConstantRhs) {
  const std::vector<double> v{1.5, -2.0};
  const auto path = linalg::Rk4Integrate(
      [](double, std::span<const double>, std::span<double> d) { d[0] = d[1] = 0.0; }, v,
      0.0, 2.0, 7);
  ASSERT_EQ(path.times.size(), 8U);
  EXPECT_DOUBLE_EQ(path.times.back(), 2.0);
  for (const auto& s : path.states) EXPECT_EQ(s, v);
}

TEST(Rk4Test, Exponential) {
  const std::vector<double> one{1.0};
  const auto grow = [](double, std::span<const double> y, std::span<double> d) { d[0] = y[0]; };
  EXPECT_NEAR(linalg::Rk4Integrate(grow, one, 0.0, 1.0, 1000).states.back()[0], std::exp(1.0),
              1e-9);
  const auto decay = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = -y[0];
  };
  EXPECT_NEAR(linalg::Rk4Integrate(decay, one, 1.0, 0.0, 1000).states.back()[0],
              std::exp(1.0), 1e-9);
}

TEST(Rk4Test, FourthOrder) {
  const std::vector<double> one{1.0};
  const auto grow = [](double, std::span<const double> y, std::span<double> d) { d[0] = y[0]; };
  auto error = [&](std::size_t steps) {
    return std::abs(linalg::Rk4Integrate(grow, one, 0.0, 1.0, steps).states.back()[0] -
                    std::exp(1.0));
  };
  const double ratio = error(20) / error(40);
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(Rk4Test, NonFiniteNamesStep) {
  const std::vector<double> one{1.0};
  const auto blowup = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = y[0] * y[0] * 1e200;
  };
  try {
    linalg::Rk4Integrate(blowup, one, 0.0, 1.0, 10);
    FAIL() << "expected a numeric failure";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
  }
}

TEST(QuadratureTest, SimpsonExactOnCubics) {
  for (int intervals : {2, 3, 4, 7, 10}) {
    std::vector<double> samples;
    const double h = 2.0 / intervals;
    for (int k = 0; k <= intervals; ++k) {
      const double t = k * h;
      samples.push_back(t * t * t - t);
    }
    EXPECT_NEAR(linalg::Simpson(samples, h), 2.0, 1e-13) << intervals;  // int_0^2 t^3 - t
  }
  EXPECT_DOUBLE_EQ(linalg::Simpson(std::vector<double>{1.0, 3.0}, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(linalg::Trapezoid(std::vector<double>{0.0, 1.0, 4.0}, 1.0), 3.0);
}

}  // namespace
}  // namespace gbcs
