// Copyright 2026 The hedge-nash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hedge_nash/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hedge_nash {

std::string LPStatusName(LPStatus status) {
  switch (status) {
    case LPStatus::kOptimal: return "optimal";
    case LPStatus::kInfeasible: return "infeasible";
    case LPStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr int kMaxPivots = 200000;

// Simplex tableau for minimization. Rows [0, rows) are constraints, the last
// row holds reduced costs; the last column holds the basic values (and minus
// the objective in the cost row).
class Tableau {
 public:
  Tableau(Matrix data, std::vector<int> basis)
      : t_(std::move(data)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  Matrix& data() { return t_; }
  const std::vector<int>& basis() const { return basis_; }
  double objective() const { return -t_(rows(), cols()); }

  void Pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i <= rows(); ++i) {
      if (i == row) continue;
      const double factor = t_(i, col);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(row);
    }
    // Exact zeros in the pivot column keep later ratio tests clean.
    for (int i = 0; i <= rows(); ++i) t_(i, col) = (i == row) ? 1.0 : 0.0;
    basis_[row] = col;
  }

  // Bland's rule over columns [0, allowed_cols). Returns false if unbounded.
  bool Optimize(int allowed_cols) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      int entering = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t_(rows(), j) < -kPivotTolerance) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;
      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        const double a = t_(i, entering);
        if (a <= kPivotTolerance) continue;
        const double ratio = t_(i, cols()) / a;
        if (leaving < 0 || ratio < best_ratio - kPivotTolerance) {
          leaving = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + kPivotTolerance && basis_[i] < basis_[leaving]) {
          leaving = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leaving < 0) return false;
      Pivot(leaving, entering);
    }
    throw std::runtime_error("simplex exceeded the pivot limit");
  }

  void DropRow(int row) {
    const int keep = static_cast<int>(t_.rows()) - 1;
    Matrix next(keep, t_.cols());
    int out = 0;
    for (int i = 0; i < t_.rows(); ++i) {
      if (i != row) next.row(out++) = t_.row(i);
    }
    t_ = std::move(next);
    basis_.erase(basis_.begin() + row);
  }

 private:
  Matrix t_;
  std::vector<int> basis_;
};

void CheckShape(const StandardFormLP& lp) {
  const auto r = lp.constraints.rows();
  const auto c = lp.constraints.cols();
  if (r < 1 || c < 1) throw std::invalid_argument("LP needs at least one row and column");
  if (lp.rhs.size() != r) throw std::invalid_argument("LP rhs length does not match A");
  if (lp.sense != LPSense::kFeasibility && lp.objective.size() != c) {
    throw std::invalid_argument("LP objective length does not match A");
  }
  if (!lp.constraints.allFinite() || !lp.rhs.allFinite() ||
      (lp.sense != LPSense::kFeasibility && !lp.objective.allFinite())) {
    throw std::invalid_argument("LP data must be finite");
  }
}

// Re-solves the basic variables against the original data to shed the
// round-off accumulated by the tableau updates.
Vector PolishSolution(const StandardFormLP& lp, const std::vector<int>& basis,
                      const Vector& tableau_solution) {
  const int c = static_cast<int>(lp.constraints.cols());
  std::vector<int> columns;
  for (int j : basis) {
    if (j < c) columns.push_back(j);
  }
  if (columns.empty()) return tableau_solution;
  Matrix basic(lp.constraints.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    basic.col(static_cast<Eigen::Index>(k)) = lp.constraints.col(columns[k]);
  }
  const Vector values = basic.colPivHouseholderQr().solve(lp.rhs);
  Vector polished = Vector::Zero(c);
  for (std::size_t k = 0; k < columns.size(); ++k) {
    polished(columns[k]) = values(static_cast<Eigen::Index>(k));
  }
  if (!polished.allFinite() || (polished.array() < -kLPNegativityTolerance).any()) {
    return tableau_solution;
  }
  const double before = (lp.constraints * tableau_solution - lp.rhs).lpNorm<Eigen::Infinity>();
  const double after = (lp.constraints * polished - lp.rhs).lpNorm<Eigen::Infinity>();
  return after <= before ? polished : tableau_solution;
}

}  // namespace

LPResult SolveLP(const StandardFormLP& lp) {
  CheckShape(lp);
  const int r = static_cast<int>(lp.constraints.rows());
  const int c = static_cast<int>(lp.constraints.cols());

  // Phase 1: minimize the sum of artificials, starting from the artificial basis.
  Matrix data = Matrix::Zero(r + 1, c + r + 1);
  std::vector<int> basis(r);
  for (int i = 0; i < r; ++i) {
    const double sign = lp.rhs(i) < 0.0 ? -1.0 : 1.0;
    data.block(i, 0, 1, c) = sign * lp.constraints.row(i);
    data(i, c + i) = 1.0;
    data(i, c + r) = sign * lp.rhs(i);
    basis[i] = c + i;
  }
  for (int i = 0; i < r; ++i) {
    data.block(r, 0, 1, c) -= data.block(i, 0, 1, c);
    data(r, c + r) -= data(i, c + r);
  }
  Tableau tableau(std::move(data), std::move(basis));
  tableau.Optimize(c + r);

  const double scale = 1.0 + lp.rhs.lpNorm<Eigen::Infinity>();
  LPResult result;
  if (tableau.objective() > kPivotTolerance * scale) {
    result.status = LPStatus::kInfeasible;
    return result;
  }

  // Move remaining (zero-level) artificials out of the basis; rows where that
  // is impossible are linearly dependent and get dropped.
  for (int i = tableau.rows() - 1; i >= 0; --i) {
    if (tableau.basis()[i] < c) continue;
    int column = -1;
    for (int j = 0; j < c; ++j) {
      if (std::abs(tableau.data()(i, j)) > kPivotTolerance) {
        column = j;
        break;
      }
    }
    if (column >= 0) {
      tableau.Pivot(i, column);
    } else {
      tableau.DropRow(i);
    }
  }

  // Phase 2 on the original columns.
  const int rows = tableau.rows();
  Matrix phase2(rows + 1, c + 1);
  phase2.topLeftCorner(rows, c) = tableau.data().topLeftCorner(rows, c);
  phase2.block(0, c, rows, 1) = tableau.data().block(0, c + r, rows, 1);
  phase2.row(rows).setZero();
  Vector cost = Vector::Zero(c);
  if (lp.sense == LPSense::kMinimize) cost = lp.objective;
  if (lp.sense == LPSense::kMaximize) cost = -lp.objective;
  phase2.block(rows, 0, 1, c) = cost.transpose();
  for (int i = 0; i < rows; ++i) {
    const double cb = cost(tableau.basis()[i]);
    if (cb != 0.0) phase2.row(rows) -= cb * phase2.row(i);
  }
  Tableau second(std::move(phase2), tableau.basis());
  if (lp.sense != LPSense::kFeasibility && !second.Optimize(c)) {
    result.status = LPStatus::kUnbounded;
    return result;
  }

  Vector solution = Vector::Zero(c);
  for (int i = 0; i < second.rows(); ++i) {
    solution(second.basis()[i]) = second.data()(i, c);
  }
  solution = PolishSolution(lp, second.basis(), solution);

  const double residual = (lp.constraints * solution - lp.rhs).lpNorm<Eigen::Infinity>();
  if (residual > kLPResidualTolerance * scale ||
      (solution.array() < -kLPNegativityTolerance).any()) {
    throw std::runtime_error("LP solution failed verification (residual " +
                             std::to_string(residual) + ")");
  }
  solution = solution.cwiseMax(0.0);
  result.status = LPStatus::kOptimal;
  result.solution = std::move(solution);
  result.objective_value =
      lp.sense == LPSense::kFeasibility ? 0.0 : lp.objective.dot(result.solution);
  return result;
}

StandardFormLP AssembleEqualizerLP(const SymmetricGame& game) {
  if (!game.nonnegative()) {
    throw std::invalid_argument("equalizer LP needs a nonnegative game");
  }
  const int n = game.n();
  Matrix c = game.payoff();
  if (game.min_entry() <= 0.0) c.array() += 1.0;
  StandardFormLP lp;
  lp.constraints = Matrix::Zero(n + 1, n + 1);
  lp.constraints.topLeftCorner(n, n) = c;
  lp.constraints.block(0, n, n, 1).setConstant(-1.0);
  lp.constraints.block(n, 0, 1, n).setOnes();
  lp.rhs = Vector::Zero(n + 1);
  lp.rhs(n) = 1.0;
  lp.objective = Vector::Zero(n + 1);
  lp.sense = LPSense::kFeasibility;
  return lp;
}

}  // namespace hedge_nash
