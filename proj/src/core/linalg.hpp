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

// Dense linear algebra and fixed-step ODE integration for the small systems
// (a few hundred rows at most) that the game machinery produces.

#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gbcs::linalg {

class Matrix {
 public:
  Matrix() = default;
  // Zero-filled.
  Matrix(std::size_t rows, std::size_t cols);
  // Row-major entries; rejects non-finite values and size mismatches.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix Identity(std::size_t n);
  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix Column(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  Matrix Transpose() const;
  Matrix Block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void SetBlock(std::size_t r0, std::size_t c0, const Matrix& block);
  std::vector<double> ColumnVector(std::size_t c) const;

  double MaxAbs() const;
  double Norm1() const;    // max column sum
  double NormInf() const;  // max row sum
  double Frobenius() const;
  bool AllFinite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

// Largest absolute entrywise difference; dimensions must agree.
double MaxAbsDiff(const Matrix& a, const Matrix& b);
Matrix HStack(const std::vector<Matrix>& blocks);
Matrix VStack(const std::vector<Matrix>& blocks);

// e^a by scaling and squaring with a diagonal Pade approximant of degree 3-13.
// tol must lie in (0, 1e-4]; the approximant targets double precision.
Matrix Expm(const Matrix& a, double tol = 1e-12);

std::vector<double> SingularValues(const Matrix& a);

struct RankResult {
  std::size_t rank = 0;
  double threshold = 0.0;  // singular values strictly above this count
  double sigma_max = 0.0;
};

// nullopt selects the automatic threshold sigma_max * max(rows, cols) * 1e-12.
RankResult Rank(const Matrix& a, std::optional<double> tol = std::nullopt);
double AutoRankThreshold(double sigma_max, std::size_t rows, std::size_t cols);

struct SolveResult {
  Matrix x;
  double condition = 0.0;  // 1-norm condition number of a
};

inline constexpr double kSingularConditionLimit = 1e12;

// Throws SingularMatrixError when a is singular or its condition exceeds
// kSingularConditionLimit.
SolveResult SolveLinear(const Matrix& a, const Matrix& b);
double ConditionNumber1(const Matrix& a);
Matrix Inverse(const Matrix& a);

using OdeRhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct SampledPath {
  std::vector<double> times;                // steps + 1 nodes, both endpoints
  std::vector<std::vector<double>> states;  // one state per node
};

// Classical RK4 with a fixed step; t1 < t0 integrates backwards.
SampledPath Rk4Integrate(const OdeRhs& f, std::span<const double> y0, double t0,
                         double t1, std::size_t steps);

// Composite Simpson on uniformly spaced samples. An odd number of intervals
// closes with the 3/8 rule; two samples fall back to the trapezoid.
double Simpson(std::span<const double> samples, double h);
double Trapezoid(std::span<const double> samples, double h);

std::string ToString(const Matrix& a, int precision = 6);

}  // namespace gbcs::linalg
