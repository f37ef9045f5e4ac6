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

#include "core/controllability.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace gbcs {

Matrix KalmanMatrix(const AugmentedSystem& sys) {
  const std::size_t dim = sys.a_bar.rows();
  Matrix k(dim, dim);
  std::vector<double> col = sys.b_bar.ColumnVector(0);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t r = 0; r < dim; ++r) k(r, j) = col[r];
    if (j + 1 < dim) col = sys.a_bar * col;
  }
  return k;
}

BlockTable::BlockTable(int agents, std::size_t n)
    : agents_(agents),
      n_(n),
      blocks_(agents + 1, std::vector<Matrix>(n * n, Matrix(n, 1))) {}

Matrix BlockTable::Stacked() const {
  Matrix out(n_ * n_, n_ * n_);
  for (int p = 1; p <= block_rows(); ++p)
    for (int q = 1; q <= columns(); ++q) out.SetBlock((p - 1) * n_, q - 1, at(p, q));
  return out;
}

BlockTable RecursionBlocks(const GbcsParams& p) {
  p.Validate();
  const std::size_t n = p.n();
  const Matrix& a = p.a_tilde;
  for (int i = 1; i <= p.agents; ++i) {
    const Matrix& q = p.q[i - 1];
    if (linalg::MaxAbsDiff(q * a, a.Transpose() * q) > 1e-12) {
      throw UsageError("block recursion requires Q_i A = A^T Q_i; player " +
                       std::to_string(i) + " violates it");
    }
  }
  // sum_i b_i R_i^{-1} (b_i + c)^T Q_i
  Matrix coupled(n, n);
  for (int i = 1; i <= p.agents; ++i) coupled += p.CouplingMatrix(i) * p.q[i - 1];
  const Matrix a2 = a * a;

  BlockTable table(p.agents, n);
  const int cols = table.columns();
  table.at(1, 1) = p.b_tilde;
  for (int q = 2; q <= cols; ++q) {
    if (q % 2 == 0) {
      const Matrix& prev = table.at(1, q - 1);
      table.at(1, q) = a * prev;
      for (int row = 2; row <= p.agents + 1; ++row) table.at(row, q) = p.q[row - 2] * prev;
    } else {
      const Matrix& prev2 = table.at(1, q - 2);
      table.at(1, q) = a2 * prev2 + coupled * prev2;
      // Rows 2..H+1 stay zero on odd columns.
    }
  }
  return table;
}

RecursionComparison RecursionMatchesDirect(const GbcsParams& p, double tol) {
  const Matrix recursion = RecursionBlocks(p).Stacked();
  const Matrix direct = KalmanMatrix(AssembleAugmented(p));
  RecursionComparison out;
  out.max_deviation = linalg::MaxAbsDiff(recursion, direct);
  out.matches = out.max_deviation <= tol;
  return out;
}

Matrix TMatrixFrom(const GbcsParams& p, const Matrix& a_bar) {
  const std::size_t n = p.n();
  const int h = p.agents;
  const Matrix e = linalg::Expm(a_bar * -p.horizon);
  std::vector<Matrix> stack{Matrix::Identity(n)};
  for (const Matrix& qt : p.q_terminal) stack.push_back(-qt);
  Matrix selector(n, h);
  for (int j = 0; j < h; ++j) selector(j + 1, j) = 1.0;
  return e.Block(0, 0, n, e.cols()) * linalg::VStack(stack) * selector;
}

Matrix TMatrix(const GbcsParams& p) { return TMatrixFrom(p, AssembleAugmented(p).a_bar); }

std::vector<double> CellRowDeviation(const Matrix& m, const Partition& partition) {
  std::vector<double> out;
  for (const auto& cell : partition.cells) {
    double worst = 0.0;
    for (std::size_t x = 0; x < cell.size(); ++x) {
      for (std::size_t y = x + 1; y < cell.size(); ++y) {
        const auto rx = m.row(cell[x]);
        const auto ry = m.row(cell[y]);
        for (std::size_t c = 0; c < m.cols(); ++c)
          worst = std::max(worst, std::abs(rx[c] - ry[c]));
      }
    }
    out.push_back(worst);
  }
  return out;
}

PartitionVerdict EvaluatePartitionVerdict(const Partition& sep, const Matrix& t, double tol) {
  PartitionVerdict out;
  out.sep = sep;
  out.t_row_deviation_per_cell = CellRowDeviation(t, sep);
  out.sep_nontrivial = HasNontrivialCell(sep);
  bool all_pass = true;
  for (std::size_t c = 0; c < sep.cells.size(); ++c) {
    if (sep.cells[c].size() >= 2 && out.t_row_deviation_per_cell[c] > tol) all_pass = false;
  }
  out.t_rows_equal = out.sep_nontrivial && all_pass;
  out.thm2_uncontrollable = out.t_rows_equal;
  return out;
}

PartitionVerdict CheckPartitionVerdict(const Topology& top, const GbcsParams& p, double tol) {
  if (p.agents != top.agent_count())
    throw UsageError("params were built for a different agent count");
  for (int i = 1; i <= p.agents; ++i) {
    const StrategyVector sv = StrategyVectorOf(top, i);
    for (int r = 0; r < top.dimension(); ++r) {
      if (p.b_vectors[i - 1](r, 0) != sv[r]) {
        throw UsageError("strategy column of player " + std::to_string(i) +
                         " does not match the topology");
      }
    }
  }
  return EvaluatePartitionVerdict(CoarsestSep(ComputeStrategyMatrix(top)), TMatrix(p), tol);
}

std::vector<std::vector<double>> KrylovBasis(const Matrix& a, std::span<const double> b,
                                             int start_power, double deflation) {
  const std::size_t dim = a.rows();
  std::vector<double> w(b.begin(), b.end());
  for (int k = 0; k < start_power; ++k) w = a * w;
  std::vector<std::vector<double>> basis;
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  while (basis.size() < dim) {
    const double before = norm(w);
    if (before == 0.0 || !std::isfinite(before)) break;
    for (double& x : w) x /= before;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < dim; ++i) dot += q[i] * w[i];
        for (std::size_t i = 0; i < dim; ++i) w[i] -= dot * q[i];
      }
    }
    const double after = norm(w);
    if (after <= deflation) break;
    for (double& x : w) x /= after;
    basis.push_back(w);
    w = a * basis.back();
  }
  return basis;
}

Matrix ProjectedKalman(const AugmentedSystem& sys, std::size_t n, int first_power) {
  const std::size_t dim = sys.a_bar.rows();
  const std::size_t count = dim - static_cast<std::size_t>(first_power);
  Matrix out(n, count);
  std::vector<double> col = sys.b_bar.ColumnVector(0);
  for (int k = 0; k < first_power; ++k) col = sys.a_bar * col;
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t r = 0; r < n; ++r) out(r, j) = col[r];
    if (j + 1 < count) col = sys.a_bar * col;
  }
  return out;
}

ControllabilityDecision DecideFromG(const Matrix& g, std::optional<double> tol) {
  const linalg::RankResult rank = linalg::Rank(g, tol);
  return {rank.rank == g.rows(), static_cast<int>(rank.rank), rank.threshold};
}

namespace {

// [I 0] applied to an orthonormal basis, one column per basis vector.
std::optional<Matrix> ProjectBasis(const std::vector<std::vector<double>>& basis,
                                   std::size_t n) {
  if (basis.empty()) return std::nullopt;
  Matrix out(n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t r = 0; r < n; ++r) out(r, j) = basis[j][r];
  return out;
}

int RankOrZero(const std::optional<Matrix>& m, std::optional<double> tol) {
  return m ? static_cast<int>(linalg::Rank(*m, tol).rank) : 0;
}

}  // namespace

GameControllability GameControllable(const GbcsParams& p, std::optional<double> tol,
                                     double deflation) {
  const std::size_t n = p.n();
  const AugmentedSystem sys = AssembleAugmented(p);
  const std::vector<double> b = sys.b_bar.ColumnVector(0);
  GameControllability out;
  out.t = TMatrixFrom(p, sys.a_bar);

  const auto basis = KrylovBasis(sys.a_bar, b, 0, deflation);
  out.kalman_rank = static_cast<int>(basis.size());
  const auto projected = ProjectBasis(basis, n);
  out.projected_kalman_rank = RankOrZero(projected, tol);
  out.decision = DecideFromG(projected ? linalg::HStack({*projected, out.t}) : out.t, tol);

  const auto projected_k1 = ProjectBasis(KrylovBasis(sys.a_bar, b, 1, deflation), n);
  out.projected_rank_from_k1 = static_cast<int>(
      linalg::Rank(projected_k1 ? linalg::HStack({*projected_k1, out.t}) : out.t, tol).rank);
  return out;
}

void CheckReportInvariants(const ControllabilityReport& r) {
  if (r.thm2_applies && !r.thm2_uncontrollable)
    throw InvariantError("report invariant broken: thm2_applies without thm2_uncontrollable");
  if (r.thm2_uncontrollable && r.controllable) {
    throw InvariantError(
        "report invariant broken: partition test says uncontrollable but the rank test "
        "says controllable");
  }
}

ControllabilityReport Analyze(const Topology& top, const GbcsParams& p,
                              const Tolerances& tol) {
  ControllabilityReport r;
  r.agents = top.agent_count();
  r.edges = top.edges();
  r.strategy = ComputeStrategyMatrix(top);
  r.tolerances = tol;
  r.params = p;
  r.params_digest = ParamsDigest(p);

  const GameControllability gc = GameControllable(p, tol.rank, tol.krylov);
  const PartitionVerdict thm2 = [&] {
    CheckPartitionVerdict(top, p, tol.t_rows);  // consistency of p and top
    return EvaluatePartitionVerdict(CoarsestSep(r.strategy), gc.t, tol.t_rows);
  }();
  r.sep = thm2.sep;
  r.t_row_deviation_per_cell = thm2.t_row_deviation_per_cell;
  r.sep_nontrivial = thm2.sep_nontrivial;
  r.t_rows_equal = thm2.t_rows_equal;
  r.thm2_uncontrollable = thm2.thm2_uncontrollable;

  r.assumption_holds = true;
  try {
    RiccatiSolve(p, tol.riccati_steps);
    const HMatrixResult h = HMatrix(p);
    if (!h.invertible) {
      r.assumption_holds = false;
      r.assumption_note = "H(Tf) is singular";
    }
  } catch (const NumericError& e) {
    r.assumption_holds = false;
    r.assumption_note = e.what();
  }
  r.thm2_applies = r.thm2_uncontrollable && r.assumption_holds;

  r.kalman_rank = gc.kalman_rank;
  r.projected_rank = gc.decision.rank;
  r.rank_threshold = gc.decision.threshold;
  r.controllable = gc.decision.controllable;
  r.projected_kalman_rank = gc.projected_kalman_rank;
  r.projected_rank_from_k1 = gc.projected_rank_from_k1;
  CheckReportInvariants(r);
  return r;
}

}  // namespace gbcs
