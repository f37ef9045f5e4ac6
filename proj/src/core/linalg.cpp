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

#include "core/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <utility>

#include "core/errors.hpp"

namespace gbcs::linalg {

namespace {

void RequireSameShape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw UsageError(std::string(op) + ": shape mismatch " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) throw UsageError("Matrix: dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw UsageError("Matrix: dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw UsageError("Matrix: expected " + std::to_string(rows * cols) +
                     " entries, got " + std::to_string(data_.size()));
  }
  if (!AllFinite()) throw UsageError("Matrix: non-finite entry");
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw UsageError("Matrix::FromRows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(entries));
}

Matrix Matrix::Column(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::Transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::Block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw UsageError("Matrix::Block: out of range");
  Matrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::SetBlock(std::size_t r0, std::size_t c0, const Matrix& block) {
  if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_)
    throw UsageError("Matrix::SetBlock: out of range");
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) (*this)(r0 + r, c0 + c) = block(r, c);
}

std::vector<double> Matrix::ColumnVector(std::size_t c) const {
  std::vector<double> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

double Matrix::MaxAbs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::Norm1() const {
  double best = 0.0;
  for (std::size_t c = 0; c < cols_; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) s += std::abs((*this)(r, c));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::NormInf() const {
  double best = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += std::abs((*this)(r, c));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::Frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  RequireSameShape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  RequireSameShape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw UsageError("operator*: inner dimensions " + std::to_string(a.cols()) +
                     " and " + std::to_string(b.rows()) + " differ");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw UsageError("matrix-vector: size mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    y[i] = s;
  }
  return y;
}

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  RequireSameShape(a, b, "MaxAbsDiff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

Matrix HStack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw UsageError("HStack: no blocks");
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks.front().rows()) throw UsageError("HStack: row mismatch");
    cols += b.cols();
  }
  Matrix out(blocks.front().rows(), cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    out.SetBlock(0, c0, b);
    c0 += b.cols();
  }
  return out;
}

Matrix VStack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw UsageError("VStack: no blocks");
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks.front().cols()) throw UsageError("VStack: column mismatch");
    rows += b.rows();
  }
  Matrix out(rows, blocks.front().cols());
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    out.SetBlock(r0, 0, b);
    r0 += b.rows();
  }
  return out;
}

// ---------------------------------------------------------------------------
// LU with partial pivoting

namespace {

struct Lu {
  Matrix lu;
  std::vector<std::size_t> perm;
  bool singular = false;
};

Lu Factor(const Matrix& a) {
  const std::size_t n = a.rows();
  Lu f{a, std::vector<std::size_t>(n), false};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  Matrix& m = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        p = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(f.perm[k], f.perm[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = m(i, k) / m(k, k);
      m(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return f;
}

Matrix LuSolve(const Lu& f, const Matrix& b) {
  const std::size_t n = f.lu.rows();
  Matrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) x(i, c) = b(f.perm[i], c);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= f.lu(i, k) * x(k, c);
      x(i, c) = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = x(ii, c);
      for (std::size_t k = ii + 1; k < n; ++k) s -= f.lu(ii, k) * x(k, c);
      x(ii, c) = s / f.lu(ii, ii);
    }
  }
  return x;
}

void RequireSquare(const Matrix& a, const char* op) {
  if (!a.is_square()) {
    throw UsageError(std::string(op) + ": matrix is " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()) + ", expected square");
  }
}

}  // namespace

Matrix Inverse(const Matrix& a) {
  RequireSquare(a, "Inverse");
  const Lu f = Factor(a);
  if (f.singular) {
    throw SingularMatrixError("Inverse: matrix is singular", HUGE_VAL);
  }
  Matrix inv = LuSolve(f, Matrix::Identity(a.rows()));
  if (!inv.AllFinite()) throw SingularMatrixError("Inverse: overflow", HUGE_VAL);
  return inv;
}

double ConditionNumber1(const Matrix& a) {
  RequireSquare(a, "ConditionNumber1");
  const Lu f = Factor(a);
  if (f.singular) return HUGE_VAL;
  const Matrix inv = LuSolve(f, Matrix::Identity(a.rows()));
  if (!inv.AllFinite()) return HUGE_VAL;
  return a.Norm1() * inv.Norm1();
}

SolveResult SolveLinear(const Matrix& a, const Matrix& b) {
  RequireSquare(a, "SolveLinear");
  if (b.rows() != a.rows()) throw UsageError("SolveLinear: right-hand side rows differ");
  const Lu f = Factor(a);
  if (f.singular) throw SingularMatrixError("SolveLinear: matrix is singular", HUGE_VAL);
  const Matrix inv = LuSolve(f, Matrix::Identity(a.rows()));
  const double cond = inv.AllFinite() ? a.Norm1() * inv.Norm1() : HUGE_VAL;
  if (!(cond <= kSingularConditionLimit)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "SolveLinear: condition estimate %.3e exceeds %.0e",
                  cond, kSingularConditionLimit);
    throw SingularMatrixError(buf, cond);
  }
  Matrix x = LuSolve(f, b);
  // One step of iterative refinement.
  Matrix r = b - a * x;
  x += LuSolve(f, r);
  return {std::move(x), cond};
}

// ---------------------------------------------------------------------------
// Matrix exponential

namespace {

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {
    17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
    2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

// Backward-error bounds for each degree at double precision.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t N>
std::pair<Matrix, Matrix> PadeUV(const Matrix& a, const std::array<double, N>& b) {
  const std::size_t n = a.rows();
  const Matrix a2 = a * a;
  Matrix u_inner = Matrix::Identity(n) * b[1];
  Matrix v = Matrix::Identity(n) * b[0];
  Matrix power = Matrix::Identity(n);
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    v += power * b[k];
    if (k + 1 < N) u_inner += power * b[k + 1];
  }
  return {a * u_inner, std::move(v)};
}

std::pair<Matrix, Matrix> Pade13UV(const Matrix& a) {
  const std::size_t n = a.rows();
  const auto& b = kPade13;
  const Matrix id = Matrix::Identity(n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  Matrix u = a * (a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] +
                  a2 * b[3] + id * b[1]);
  Matrix v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] + a4 * b[4] +
             a2 * b[2] + id * b[0];
  return {std::move(u), std::move(v)};
}

Matrix PadeQuotient(const std::pair<Matrix, Matrix>& uv) {
  const auto& [u, v] = uv;
  const Lu f = Factor(v - u);
  if (f.singular) throw NumericError("Expm: Pade denominator is singular");
  return LuSolve(f, v + u);
}

}  // namespace

Matrix Expm(const Matrix& a, double tol) {
  RequireSquare(a, "Expm");
  if (!(tol > 0.0 && tol <= 1e-4)) throw UsageError("Expm: tol must lie in (0, 1e-4]");
  if (!a.AllFinite()) throw NumericError("Expm: non-finite input");
  const double norm = a.Norm1();
  Matrix result;
  if (norm <= kTheta3) {
    result = PadeQuotient(PadeUV(a, kPade3));
  } else if (norm <= kTheta5) {
    result = PadeQuotient(PadeUV(a, kPade5));
  } else if (norm <= kTheta7) {
    result = PadeQuotient(PadeUV(a, kPade7));
  } else if (norm <= kTheta9) {
    result = PadeQuotient(PadeUV(a, kPade9));
  } else {
    const int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    const Matrix scaled = a * std::ldexp(1.0, -s);
    result = PadeQuotient(Pade13UV(scaled));
    for (int i = 0; i < s; ++i) result = result * result;
  }
  if (!result.AllFinite()) throw NumericError("Expm: overflow (result not representable)");
  return result;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD (singular values only)

std::vector<double> SingularValues(const Matrix& a) {
  // Work on a tall copy so the rotations act on the shorter dimension.
  Matrix w = a.rows() >= a.cols() ? a : a.Transpose();
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  constexpr double kEps = 2.220446049250313e-16;
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          const double wi = w(r, i), wj = w(r, j);
          alpha += wi * wi;
          beta += wj * wj;
          gamma += wi * wj;
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t r = 0; r < m; ++r) {
          const double wi = w(r, i), wj = w(r, j);
          w(r, i) = c * wi - s * wj;
          w(r, j) = s * wi + c * wj;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < m; ++r) s += w(r, j) * w(r, j);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double AutoRankThreshold(double sigma_max, std::size_t rows, std::size_t cols) {
  return sigma_max * static_cast<double>(std::max(rows, cols)) * 1e-12;
}

RankResult Rank(const Matrix& a, std::optional<double> tol) {
  if (a.empty()) throw UsageError("Rank: empty matrix");
  const std::vector<double> sv = SingularValues(a);
  RankResult out;
  out.sigma_max = sv.empty() ? 0.0 : sv.front();
  out.threshold = tol ? *tol : AutoRankThreshold(out.sigma_max, a.rows(), a.cols());
  for (double s : sv)
    if (s > out.threshold) ++out.rank;
  return out;
}

// ---------------------------------------------------------------------------
// ODE and quadrature

SampledPath Rk4Integrate(const OdeRhs& f, std::span<const double> y0, double t0,
                         double t1, std::size_t steps) {
  if (steps < 1) throw UsageError("Rk4Integrate: steps must be >= 1");
  const std::size_t dim = y0.size();
  const double h = (t1 - t0) / static_cast<double>(steps);
  SampledPath path;
  path.times.reserve(steps + 1);
  path.states.reserve(steps + 1);
  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  path.times.push_back(t0);
  path.states.push_back(y);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = t0 + h * static_cast<double>(step);
    f(t, y, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    f(t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    f(t + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
    f(t + h, tmp, k4);
    for (std::size_t i = 0; i < dim; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    const double t_next = step + 1 == steps ? t1 : t0 + h * static_cast<double>(step + 1);
    for (double v : y) {
      if (!std::isfinite(v)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "Rk4Integrate: non-finite state at step %zu (t=%.6g)", step + 1,
                      t_next);
        throw NumericError(buf);
      }
    }
    path.times.push_back(t_next);
    path.states.push_back(y);
  }
  return path;
}

double Trapezoid(std::span<const double> samples, double h) {
  if (samples.size() < 2) return 0.0;
  double s = 0.5 * (samples.front() + samples.back());
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) s += samples[i];
  return s * h;
}

double Simpson(std::span<const double> samples, double h) {
  const std::size_t n = samples.size() == 0 ? 0 : samples.size() - 1;
  if (n == 0) return 0.0;
  if (n == 1) return Trapezoid(samples, h);
  std::size_t even_part = n % 2 == 0 ? n : n - 3;
  double s = 0.0;
  if (even_part > 0) {
    double acc = samples[0] + samples[even_part];
    for (std::size_t i = 1; i < even_part; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * samples[i];
    s = acc * h / 3.0;
  }
  if (even_part != n) {
    const std::size_t k = even_part;
    s += 3.0 * h / 8.0 *
         (samples[k] + 3.0 * samples[k + 1] + 3.0 * samples[k + 2] + samples[k + 3]);
  }
  return s;
}

std::string ToString(const Matrix& a, int precision) {
  std::ostringstream os;
  os.precision(precision);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    os << (r == 0 ? "[[" : " [");
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (c) os << ", ";
      os << a(r, c);
    }
    os << (r + 1 == a.rows() ? "]]" : "]\n");
  }
  return os.str();
}

}  // namespace gbcs::linalg
