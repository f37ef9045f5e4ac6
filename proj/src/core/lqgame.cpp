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

#include "core/lqgame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "core/errors.hpp"

namespace gbcs {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kFiniteEscape = 1e12;

void RequireShape(const Matrix& m, std::size_t rows, std::size_t cols,
                  const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw UsageError(what + " must be " + std::to_string(rows) + "x" +
                     std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
}

void RequireSymmetric(const Matrix& m, const std::string& what) {
  if (linalg::MaxAbsDiff(m, m.Transpose()) > kSymmetryTol)
    throw UsageError(what + " is not symmetric");
}

void RequirePlayer(const GbcsParams& p, int player) {
  if (player < 1 || player > p.agents)
    throw UsageError("player index " + std::to_string(player) + " out of range");
}

}  // namespace

void GbcsParams::Validate() const {
  if (agents < 1) throw UsageError("params: need at least one agent");
  const std::size_t dim = n();
  RequireShape(a_tilde, dim, dim, "a_tilde");
  RequireShape(b_tilde, dim, 1, "b_tilde");
  RequireShape(c, dim, 1, "c");
  const auto h = static_cast<std::size_t>(agents);
  if (b_vectors.size() != h || q.size() != h || q_terminal.size() != h || r.size() != h)
    throw UsageError("params: per-player lists must have " + std::to_string(h) + " entries");
  for (std::size_t i = 0; i < h; ++i) {
    const std::string tag = "[" + std::to_string(i + 1) + "]";
    RequireShape(b_vectors[i], dim, 1, "b_vectors" + tag);
    RequireShape(q[i], dim, dim, "q" + tag);
    RequireShape(q_terminal[i], dim, dim, "q_terminal" + tag);
    RequireSymmetric(q[i], "q" + tag);
    RequireSymmetric(q_terminal[i], "q_terminal" + tag);
    if (!(r[i] > 0.0) || !std::isfinite(r[i])) throw UsageError("r" + tag + " must be > 0");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw UsageError("horizon must be > 0");
}

Matrix GbcsParams::CouplingMatrix(int player) const {
  RequirePlayer(*this, player);
  const Matrix& b = b_vectors[player - 1];
  return b * ((b + c).Transpose() * (1.0 / r[player - 1]));
}

std::string ParamsDigest(const GbcsParams& p) {
  std::uint64_t hash = 14695981039346656037ull;
  auto mix = [&](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      hash ^= bytes[i];
      hash *= 1099511628211ull;
    }
  };
  auto mix_matrix = [&](const Matrix& m) {
    for (double v : m.data()) mix(&v, sizeof v);
  };
  mix(&p.agents, sizeof p.agents);
  mix_matrix(p.a_tilde);
  for (const Matrix& b : p.b_vectors) mix_matrix(b);
  mix_matrix(p.b_tilde);
  mix_matrix(p.c);
  for (const Matrix& q : p.q) mix_matrix(q);
  for (const Matrix& q : p.q_terminal) mix_matrix(q);
  for (double r : p.r) mix(&r, sizeof r);
  mix(&p.horizon, sizeof p.horizon);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

GbcsParams DefaultParams(const Topology& top, const ParamOverrides& overrides) {
  const int h = top.agent_count();
  const std::size_t n = top.dimension();
  GbcsParams p;
  p.agents = h;
  p.a_tilde = overrides.a_tilde.value_or(Matrix::Identity(n));
  p.b_tilde = overrides.b_tilde.value_or(Matrix(n, 1, std::vector<double>(n, 1.0)));
  p.c = overrides.c.value_or(Matrix(n, 1));
  for (int i = 1; i <= h; ++i) {
    const StrategyVector sv = StrategyVectorOf(top, i);
    p.b_vectors.push_back(Matrix(n, 1, std::vector<double>(sv.begin(), sv.end())));
  }
  p.q = overrides.q.value_or(std::vector<Matrix>(h, Matrix::Identity(n)));
  p.q_terminal = overrides.q_terminal.value_or(std::vector<Matrix>(h, Matrix::Identity(n)));
  p.r = overrides.r.value_or(std::vector<double>(h, 1.0));
  p.horizon = overrides.horizon.value_or(1.0);
  p.Validate();
  return p;
}

AugmentedSystem AssembleAugmented(const GbcsParams& p) {
  p.Validate();
  const std::size_t n = p.n();
  AugmentedSystem sys{Matrix(n * n, n * n), Matrix(n * n, 1)};
  sys.a_bar.SetBlock(0, 0, p.a_tilde);
  const Matrix neg_at = -p.a_tilde.Transpose();
  for (int j = 1; j <= p.agents; ++j) {
    sys.a_bar.SetBlock(0, j * n, p.CouplingMatrix(j));
    sys.a_bar.SetBlock(j * n, 0, p.q[j - 1]);
    sys.a_bar.SetBlock(j * n, j * n, neg_at);
  }
  sys.b_bar.SetBlock(0, 0, p.b_tilde);
  return sys;
}

Matrix GameMatrixM(const GbcsParams& p) {
  p.Validate();
  const std::size_t n = p.n();
  Matrix m(n * n, n * n);
  m.SetBlock(0, 0, p.a_tilde);
  const Matrix neg_at = -p.a_tilde.Transpose();
  for (int j = 1; j <= p.agents; ++j) {
    m.SetBlock(0, j * n, -p.CouplingMatrix(j));
    m.SetBlock(j * n, 0, -p.q[j - 1]);
    m.SetBlock(j * n, j * n, neg_at);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Riccati

Matrix RiccatiRhs(const GbcsParams& p, int player, const Matrix& k) {
  const Matrix& a = p.a_tilde;
  return -(a.Transpose() * k) - k * a + k * p.CouplingMatrix(player) * k - p.q[player - 1];
}

RiccatiSolution RiccatiSolve(const GbcsParams& p, int steps) {
  p.Validate();
  if (steps < 10) throw UsageError("RiccatiSolve: steps must be >= 10");
  const std::size_t n = p.n();
  const double tf = p.horizon;
  auto node_time = [&](int k) { return tf * static_cast<double>(k) / steps; };

  RiccatiSolution sol;
  sol.times.resize(steps + 1);
  for (int k = 0; k <= steps; ++k) sol.times[k] = node_time(k);

  for (int player = 1; player <= p.agents; ++player) {
    const Matrix s = p.CouplingMatrix(player);
    const Matrix at = p.a_tilde.Transpose();
    const Matrix& q = p.q[player - 1];
    linalg::OdeRhs rhs = [&](double, std::span<const double> y, std::span<double> dy) {
      Matrix k(n, n);
      std::copy(y.begin(), y.end(), k.data().begin());
      const Matrix d = -(at * k) - k * p.a_tilde + k * s * k - q;
      std::copy(d.data().begin(), d.data().end(), dy.begin());
    };
    std::vector<Matrix> samples(steps + 1);
    samples[steps] = p.q_terminal[player - 1];
    std::vector<double> y(samples[steps].data().begin(), samples[steps].data().end());
    for (int k = steps; k > 0; --k) {
      linalg::SampledPath step;
      try {
        step = linalg::Rk4Integrate(rhs, y, node_time(k), node_time(k - 1), 1);
      } catch (const NumericError&) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "Riccati solution of player %d escapes to infinity near t=%.6g",
                      player, node_time(k));
        throw NumericError(buf);
      }
      y = step.states.back();
      Matrix kmat(n, n);
      std::copy(y.begin(), y.end(), kmat.data().begin());
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r + 1; c < n; ++c) {
          const double avg = 0.5 * (kmat(r, c) + kmat(c, r));
          sol.max_asymmetry_removed =
              std::max(sol.max_asymmetry_removed, std::abs(kmat(r, c) - kmat(c, r)));
          kmat(r, c) = avg;
          kmat(c, r) = avg;
        }
      }
      if (kmat.MaxAbs() > kFiniteEscape || !kmat.AllFinite()) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "Riccati solution of player %d escapes to infinity near t=%.6g",
                      player, node_time(k - 1));
        throw NumericError(buf);
      }
      y.assign(kmat.data().begin(), kmat.data().end());
      samples[k - 1] = std::move(kmat);
    }
    sol.k.push_back(std::move(samples));
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Existence matrix and boundary value problem

namespace {

// stack(I, Q_1T, ..., Q_HT) with the given sign on the terminal weights.
Matrix TerminalStack(const GbcsParams& p, double sign) {
  std::vector<Matrix> blocks{Matrix::Identity(p.n())};
  for (const Matrix& qt : p.q_terminal) blocks.push_back(qt * sign);
  return linalg::VStack(blocks);
}

}  // namespace

HMatrixResult HMatrix(const GbcsParams& p) {
  const std::size_t n = p.n();
  const Matrix e = linalg::Expm(GameMatrixM(p) * -p.horizon);
  HMatrixResult out;
  out.h = e.Block(0, 0, n, e.cols()) * TerminalStack(p, 1.0);
  out.condition = linalg::ConditionNumber1(out.h);
  out.invertible = out.condition <= linalg::kSingularConditionLimit;
  return out;
}

SampledSignal SampledSignal::Constant(double value, double t1, std::size_t intervals) {
  if (intervals < 1) throw UsageError("SampledSignal: need at least one interval");
  return SampledSignal{0.0, t1, std::vector<double>(intervals + 1, value)};
}

double SampledSignal::At(double t) const {
  if (values.size() < 2) throw UsageError("SampledSignal: need at least two samples");
  const double x = (t - t0) / step();
  if (x <= 0.0) return values.front();
  const auto last = static_cast<double>(intervals());
  if (x >= last) return values.back();
  const auto k = static_cast<std::size_t>(x);
  const double frac = x - static_cast<double>(k);
  if (frac == 0.0) return values[k];
  return values[k] * (1.0 - frac) + values[k + 1] * frac;
}

std::vector<double> SolveBvpForced(const GbcsParams& p, std::span<const double> x0,
                                   const SampledSignal& z,
                                   std::span<const double> forcing) {
  p.Validate();
  const std::size_t n = p.n();
  const std::size_t dim = n * n;
  if (x0.size() != n) throw UsageError("SolveBvp: x0 must have " + std::to_string(n) + " entries");
  if (forcing.size() != n) throw UsageError("SolveBvp: forcing column has wrong size");
  if (z.values.size() < 2) throw UsageError("SolveBvp: z needs at least two samples");
  if (std::abs(z.t0) > 0.0 || std::abs(z.t1 - p.horizon) > 1e-12 * p.horizon)
    throw UsageError("SolveBvp: z must be sampled on [0, Tf]");

  const Matrix m = GameMatrixM(p);
  const Matrix e_neg = linalg::Expm(m * -p.horizon);

  // Boundary operators P (picks x(0)) and Q (phi_i(T) - Q_iT x(T)).
  Matrix pm(dim, dim);
  pm.SetBlock(0, 0, Matrix::Identity(n));
  Matrix qm(dim, dim);
  for (int i = 1; i <= p.agents; ++i) {
    qm.SetBlock(i * n, 0, -p.q_terminal[i - 1]);
    qm.SetBlock(i * n, i * n, Matrix::Identity(n));
  }

  // g = int_0^T e^{M (T - tau)} N z(tau) dtau on the z grid.
  const std::size_t intervals = z.intervals();
  const double h = z.step();
  const Matrix step_exp = linalg::Expm(m * h);
  std::vector<double> v(dim, 0.0);
  std::copy(forcing.begin(), forcing.end(), v.begin());
  std::vector<std::vector<double>> integrand(dim, std::vector<double>(intervals + 1));
  for (std::size_t k = intervals + 1; k-- > 0;) {
    for (std::size_t r = 0; r < dim; ++r) integrand[r][k] = v[r] * z.values[k];
    if (k > 0) v = step_exp * v;
  }
  std::vector<double> g(dim);
  for (std::size_t r = 0; r < dim; ++r) g[r] = linalg::Simpson(integrand[r], h);

  std::vector<double> rhs = qm * g;
  for (double& x : rhs) x = -x;
  for (std::size_t r = 0; r < n; ++r) rhs[r] += x0[r];

  const Matrix w = pm * e_neg + qm;
  linalg::SolveResult solved;
  try {
    solved = linalg::SolveLinear(w, Matrix::Column(rhs));
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(
        std::string("no open-loop Nash equilibrium: boundary matrix is singular (") +
            e.what() + ")",
        e.condition());
  }
  return e_neg * solved.x.ColumnVector(0);
}

std::vector<double> SolveBvp(const GbcsParams& p, std::span<const double> x0,
                             const SampledSignal& z) {
  return SolveBvpForced(p, x0, z, p.c.ColumnVector(0));
}

std::vector<double> ToAugmentedInitialState(const GbcsParams& p,
                                            std::span<const double> y0) {
  const std::size_t n = p.n();
  if (y0.size() != n * n) throw UsageError("initial stack has wrong size");
  std::vector<double> out(y0.begin(), y0.end());
  for (std::size_t i = n; i < out.size(); ++i) out[i] = -out[i];
  return out;
}

// ---------------------------------------------------------------------------
// Simulation and cost

namespace {

// u_i = R_i^{-1} (b_i + c)^T psi_i, augmented convention.
std::vector<double> ActionsFromState(const GbcsParams& p, std::span<const double> y) {
  const std::size_t n = p.n();
  std::vector<double> u(p.agents);
  for (int i = 1; i <= p.agents; ++i) {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      s += (p.b_vectors[i - 1](r, 0) + p.c(r, 0)) * y[i * n + r];
    u[i - 1] = s / p.r[i - 1];
  }
  return u;
}

void RequireUniformGrid(const std::vector<double>& times) {
  if (times.size() < 2) throw UsageError("trajectory needs at least two nodes");
  const double h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (std::abs(times[k] - times[k - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw UsageError("trajectory grid is not uniform");
  }
}

template <typename Quadrature>
double CostWith(const GbcsParams& p, const Trajectory& traj, int player, Quadrature quad) {
  RequirePlayer(p, player);
  RequireUniformGrid(traj.times);
  const std::size_t n = p.n();
  if (traj.states.size() != traj.times.size() || traj.actions.size() != traj.times.size())
    throw UsageError("trajectory sample counts do not match its grid");
  const Matrix& q = p.q[player - 1];
  const double r = p.r[player - 1];
  std::vector<double> integrand(traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& y = traj.states[k];
    if (y.size() < n) throw UsageError("trajectory state too short");
    const std::span<const double> x(y.data(), n);
    const std::vector<double> qx = q * x;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * qx[i];
    const double u = traj.actions[k][player - 1];
    integrand[k] = 0.5 * (s + r * u * u);
  }
  const double h = (traj.times.back() - traj.times.front()) /
                   static_cast<double>(traj.times.size() - 1);
  const std::span<const double> xt(traj.states.back().data(), n);
  const std::vector<double> qtx = p.q_terminal[player - 1] * xt;
  double terminal = 0.0;
  for (std::size_t i = 0; i < n; ++i) terminal += xt[i] * qtx[i];
  return quad(integrand, h) + 0.5 * terminal;
}

}  // namespace

Trajectory Simulate(const GbcsParams& p, const AugmentedSystem& sys,
                    std::span<const double> y0, const SampledSignal& u, int steps) {
  p.Validate();
  if (steps < 10) throw UsageError("Simulate: steps must be >= 10");
  const std::size_t dim = sys.a_bar.rows();
  if (y0.size() != dim) throw UsageError("Simulate: initial state has wrong size");
  const Matrix& a = sys.a_bar;
  const std::vector<double> b = sys.b_bar.ColumnVector(0);
  linalg::OdeRhs rhs = [&](double t, std::span<const double> y, std::span<double> dy) {
    const double ut = u.At(t);
    for (std::size_t r = 0; r < dim; ++r) {
      double s = b[r] * ut;
      const auto row = a.row(r);
      for (std::size_t c = 0; c < dim; ++c) s += row[c] * y[c];
      dy[r] = s;
    }
  };
  linalg::SampledPath path;
  try {
    path = linalg::Rk4Integrate(rhs, y0, 0.0, p.horizon, steps);
  } catch (const NumericError& e) {
    throw NumericError(std::string("Simulate: ") + e.what());
  }
  Trajectory traj;
  traj.times = std::move(path.times);
  traj.states = std::move(path.states);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    traj.regulator_input.push_back(u.At(traj.times[k]));
    traj.actions.push_back(ActionsFromState(p, traj.states[k]));
  }
  return traj;
}

Trajectory EquilibriumTrajectory(const GbcsParams& p, std::span<const double> x0,
                                 const SampledSignal& u, int steps) {
  const std::vector<double> y0 = SolveBvpForced(p, x0, u, p.b_tilde.ColumnVector(0));
  return Simulate(p, AssembleAugmented(p), ToAugmentedInitialState(p, y0), u, steps);
}

double Cost(const GbcsParams& p, const Trajectory& traj, int player) {
  return CostWith(p, traj, player, [](std::span<const double> f, double h) {
    return linalg::Simpson(f, h);
  });
}

double CostTrapezoid(const GbcsParams& p, const Trajectory& traj, int player) {
  return CostWith(p, traj, player, [](std::span<const double> f, double h) {
    return linalg::Trapezoid(f, h);
  });
}

// ---------------------------------------------------------------------------
// Nash certification by unilateral deviation

namespace {

struct Perturbation {
  std::vector<double> cos_coef;
  std::vector<double> sin_coef;
  double horizon = 1.0;

  double operator()(double t) const {
    double s = 0.0;
    for (std::size_t k = 0; k < cos_coef.size(); ++k) {
      const double w = std::numbers::pi * static_cast<double>(k) * t / horizon;
      s += cos_coef[k] * std::cos(w) + sin_coef[k] * std::sin(w);
    }
    return s;
  }
};

Perturbation RandomPerturbation(std::mt19937_64& rng, double horizon) {
  constexpr int kModes = 5;
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Perturbation pi;
  pi.horizon = horizon;
  for (int k = 0; k < kModes; ++k) {
    const double scale = 1.0 / (1.0 + k);
    pi.cos_coef.push_back(coef(rng) * scale);
    pi.sin_coef.push_back(k == 0 ? 0.0 : coef(rng) * scale);
  }
  return pi;
}

// Re-integrates x' = A x + sum_j b_j u_j(t) + b z(t) on a grid of `steps`
// intervals. `fine` holds the equilibrium actions on a grid twice as dense so
// every RK4 stage reads an exact sample.
Trajectory Replay(const GbcsParams& p, std::span<const double> x0, const SampledSignal& z,
                  const std::vector<std::vector<double>>& fine, int steps, int player,
                  const Perturbation* pi, double eps) {
  const std::size_t n = p.n();
  const double h = p.horizon / steps;
  std::vector<std::vector<double>> bcols;
  for (const Matrix& b : p.b_vectors) bcols.push_back(b.ColumnVector(0));
  const std::vector<double> breg = p.b_tilde.ColumnVector(0);

  auto actions_at = [&](std::size_t fine_index, double t) {
    std::vector<double> u = fine[fine_index];
    if (pi) u[player - 1] += eps * (*pi)(t);
    return u;
  };
  auto deriv = [&](double t, std::span<const double> x, const std::vector<double>& u,
                   std::span<double> dx) {
    const double zt = z.At(t);
    for (std::size_t r = 0; r < n; ++r) {
      double s = breg[r] * zt;
      for (std::size_t c = 0; c < n; ++c) s += p.a_tilde(r, c) * x[c];
      for (int j = 0; j < p.agents; ++j) s += bcols[j][r] * u[j];
      dx[r] = s;
    }
  };

  Trajectory traj;
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (int step = 0; step <= steps; ++step) {
    const double t = p.horizon * step / steps;
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.actions.push_back(actions_at(2 * step, t));
    traj.regulator_input.push_back(z.At(t));
    if (step == steps) break;
    const auto u0 = actions_at(2 * step, t);
    const auto um = actions_at(2 * step + 1, t + 0.5 * h);
    const auto u1 = actions_at(2 * step + 2, t + h);
    deriv(t, x, u0, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    deriv(t + 0.5 * h, tmp, um, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    deriv(t + 0.5 * h, tmp, um, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    deriv(t + h, tmp, u1, k4);
    for (std::size_t i = 0; i < n; ++i)
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    for (double v : x)
      if (!std::isfinite(v)) throw NumericError("deviation replay produced a non-finite state");
  }
  return traj;
}

}  // namespace

NashReport NashDeviationCheck(const GbcsParams& p, std::span<const double> x0,
                              const SampledSignal& z, const NashCheckOptions& options) {
  if (options.trials < 1) throw UsageError("NashDeviationCheck: trials must be >= 1");
  if (!(options.eps >= 0.0)) throw UsageError("NashDeviationCheck: eps must be >= 0");
  const int steps = std::max(10, options.steps + options.steps % 2);

  const Trajectory eq = EquilibriumTrajectory(p, x0, z, 2 * steps);

  NashReport report;
  report.seed = options.seed;
  report.trials = options.trials;
  report.eps = options.eps;
  report.threshold = options.threshold;
  report.min_delta = HUGE_VAL;
  std::mt19937_64 rng(options.seed);
  for (int player = 1; player <= p.agents; ++player) {
    const Trajectory base = Replay(p, x0, z, eq.actions, steps, player, nullptr, 0.0);
    const double j_eq = Cost(p, base, player);
    report.equilibrium_cost.push_back(j_eq);
    std::vector<double> deltas;
    for (int trial = 0; trial < options.trials; ++trial) {
      const Perturbation pi = RandomPerturbation(rng, p.horizon);
      const Trajectory dev = Replay(p, x0, z, eq.actions, steps, player, &pi, options.eps);
      const double delta = Cost(p, dev, player) - j_eq;
      deltas.push_back(delta);
      report.min_delta = std::min(report.min_delta, delta);
    }
    report.delta_cost.push_back(std::move(deltas));
  }
  report.certified = report.min_delta >= options.threshold;
  return report;
}

}  // namespace gbcs
