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

#include "hedge_nash/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hedge_nash/lp.h"
#include "hedge_nash/rng.h"

namespace hedge_nash {

double EpsilonGap(const SymmetricGame& game, const Vector& x) {
  const PayoffVector p = ComputePayoffs(game, x);
  return std::max(0.0, p.max - p.self_payoff);
}

double EpsilonGap(const SymmetricGame& game, const MixedStrategy& x) {
  return EpsilonGap(game, x.probs());
}

double WellSupportedEpsilon(const SymmetricGame& game, const Vector& x,
                            double support_tolerance) {
  const PayoffVector p = ComputePayoffs(game, x);
  double eps = 0.0;
  for (int i : Support(x, support_tolerance)) eps = std::max(eps, p.max - p.values(i));
  return eps;
}

bool IsWellSupported(const SymmetricGame& game, const MixedStrategy& x, double eps,
                     double support_tolerance) {
  return WellSupportedEpsilon(game, x.probs(), support_tolerance) <= eps;
}

EquilibriumCertificate MakeCertificate(const SymmetricGame& game, const MixedStrategy& x,
                                       std::string method) {
  EquilibriumCertificate cert{x, Support(x), 0.0, 0.0, std::move(method), 0.0,
                              game.fingerprint()};
  cert.gap = EpsilonGap(game, x);
  cert.well_supported_eps = WellSupportedEpsilon(game, x.probs());
  cert.game_units_gap = game.units().ToOriginalDifference(cert.gap);
  return cert;
}

MixedStrategy CleanStrategy(const Vector& x) {
  if ((x.array() < -kLPNegativityTolerance).any()) {
    throw std::invalid_argument("strategy has significantly negative mass");
  }
  const Vector clamped = x.cwiseMax(0.0);
  const double total = clamped.sum();
  if (!(total > 0.0)) throw std::invalid_argument("strategy has no mass");
  return MixedStrategy(clamped / total);
}

namespace {

// Payoff matrix shifted so every entry is at least 1; gaps and equalizers are
// unchanged by the shift.
Matrix PositivePayoffs(const SymmetricGame& game) {
  return (game.payoff().array() + (1.0 - game.min_entry())).matrix();
}

// Column layout: x (|L|), w, eps, lower slacks (|L|), upper slacks (|L|),
// dominance slacks (n - |L|).
StandardFormLP AssembleSubequalizerLP(const Matrix& c, const IndexSet& carrier,
                                      bool dominance) {
  const int n = static_cast<int>(c.rows());
  const int m = static_cast<int>(carrier.size());
  std::vector<int> outside;
  std::vector<bool> in_carrier(n, false);
  for (int i : carrier) in_carrier[i] = true;
  for (int j = 0; j < n; ++j) {
    if (!in_carrier[j]) outside.push_back(j);
  }
  const int o = dominance ? static_cast<int>(outside.size()) : 0;
  const int w_col = m;
  const int eps_col = m + 1;
  const int lower0 = m + 2;
  const int upper0 = lower0 + m;
  const int dom0 = upper0 + m;
  const int cols = dom0 + o;
  const int rows = 2 * m + o + 1;

  StandardFormLP lp;
  lp.constraints = Matrix::Zero(rows, cols);
  lp.rhs = Vector::Zero(rows);
  lp.objective = Vector::Zero(cols);
  lp.objective(eps_col) = 1.0;
  lp.sense = LPSense::kMinimize;

  auto payoff_row = [&](int row, int strategy) {
    for (int k = 0; k < m; ++k) lp.constraints(row, k) = c(strategy, carrier[k]);
    lp.constraints(row, w_col) = -1.0;
  };
  for (int a = 0; a < m; ++a) {
    // (CX)_i - w - t_i = 0, i.e. (CX)_i >= w
    payoff_row(a, carrier[a]);
    lp.constraints(a, lower0 + a) = -1.0;
    // (CX)_i - w - eps + s_i = 0, i.e. (CX)_i <= w + eps
    payoff_row(m + a, carrier[a]);
    lp.constraints(m + a, eps_col) = -1.0;
    lp.constraints(m + a, upper0 + a) = 1.0;
  }
  for (int b = 0; b < o; ++b) {
    // (CX)_j - w + u_j = 0, i.e. (CX)_j <= w
    payoff_row(2 * m + b, outside[b]);
    lp.constraints(2 * m + b, dom0 + b) = 1.0;
  }
  lp.constraints.block(rows - 1, 0, 1, m).setOnes();
  lp.rhs(rows - 1) = 1.0;
  return lp;
}

std::optional<GapSolution> SolveSubequalizer(const SymmetricGame& game, const IndexSet& carrier,
                                             bool dominance) {
  const Matrix c = PositivePayoffs(game);
  const LPResult result = SolveLP(AssembleSubequalizerLP(c, carrier, dominance));
  if (result.status != LPStatus::kOptimal) return std::nullopt;
  Vector x = Vector::Zero(game.n());
  for (std::size_t k = 0; k < carrier.size(); ++k) {
    x(carrier[k]) = result.solution(static_cast<Eigen::Index>(k));
  }
  return GapSolution{CleanStrategy(x), result.objective_value};
}

void CheckCarrier(const SymmetricGame& game, const IndexSet& carrier) {
  if (carrier.empty()) throw std::invalid_argument("carrier must be nonempty");
  std::vector<bool> seen(game.n(), false);
  for (int i : carrier) {
    if (i < 0 || i >= game.n()) throw std::invalid_argument("carrier index out of range");
    if (seen[i]) throw std::invalid_argument("carrier has a repeated index");
    seen[i] = true;
  }
}

}  // namespace

std::optional<EquilibriumCertificate> FindEqualizer(const SymmetricGame& game, double tolerance) {
  SymmetricGame shifted(PositivePayoffs(game));
  const LPResult result = SolveLP(AssembleEqualizerLP(shifted));
  if (result.status != LPStatus::kOptimal) return std::nullopt;
  const MixedStrategy x = CleanStrategy(result.solution.head(game.n()));
  const PayoffVector p = ComputePayoffs(game, x);
  if (p.max - p.min > tolerance) return std::nullopt;
  return MakeCertificate(game, x, "equalizer_lp");
}

GapSolution MinEqualizerGap(const SymmetricGame& game) {
  IndexSet all(game.n());
  for (int i = 0; i < game.n(); ++i) all[i] = i;
  auto solution = SolveSubequalizer(game, all, /*dominance=*/false);
  if (!solution) throw std::logic_error("min-gap LP over the full simplex cannot be infeasible");
  const PayoffVector p = ComputePayoffs(game, solution->strategy);
  solution->gap = std::max(0.0, p.max - p.min);
  return *solution;
}

std::optional<GapSolution> BestSubequalizer(const SymmetricGame& game, const IndexSet& carrier) {
  CheckCarrier(game, carrier);
  return SolveSubequalizer(game, carrier, /*dominance=*/true);
}

std::optional<EquilibriumCertificate> VerifySupport(const SymmetricGame& game,
                                                    const IndexSet& candidate, double tolerance) {
  const auto solution = BestSubequalizer(game, candidate);
  if (!solution || solution->gap > tolerance) return std::nullopt;
  EquilibriumCertificate cert = MakeCertificate(game, solution->strategy, "support_lp");
  if (cert.gap > tolerance) return std::nullopt;
  return cert;
}

std::vector<EquilibriumCertificate> EnumerateSymmetricEquilibria(const SymmetricGame& game,
                                                                 int max_n) {
  const int n = game.n();
  if (n > max_n) {
    throw std::invalid_argument("support enumeration is limited to n <= " +
                                std::to_string(max_n));
  }
  constexpr double kSingularCutoff = 1e-10;
  constexpr int kNullSpaceSamples = 10;
  Rng rng(0x5eed5eedULL);
  std::vector<EquilibriumCertificate> found;

  auto consider = [&](const IndexSet& support, const Vector& z) {
    const int m = static_cast<int>(support.size());
    Vector x = Vector::Zero(n);
    for (int k = 0; k < m; ++k) x(support[k]) = z(k);
    if ((x.array() < -kLPNegativityTolerance).any()) return;
    x = x.cwiseMax(0.0);
    if (std::abs(x.sum() - 1.0) > 1e-6) return;
    x /= x.sum();
    if (EpsilonGap(game, x) > kCertificateTolerance) return;
    for (const auto& existing : found) {
      if ((existing.strategy.probs() - x).lpNorm<Eigen::Infinity>() <= 1e-7) return;
    }
    found.push_back(MakeCertificate(game, MixedStrategy(x), "support_enumeration"));
  };

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    IndexSet support;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) support.push_back(i);
    }
    const int m = static_cast<int>(support.size());
    // Unknowns (x_S, v): C_SS x_S - v 1 = 0, 1^T x_S = 1.
    Matrix system = Matrix::Zero(m + 1, m + 1);
    Vector rhs = Vector::Zero(m + 1);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) system(a, b) = game(support[a], support[b]);
      system(a, m) = -1.0;
      system(m, a) = 1.0;
    }
    rhs(m) = 1.0;
    Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double top = svd.singularValues()(0);
    // Absolute cutoff: Eigen's threshold is relative to the largest value.
    svd.setThreshold(top > kSingularCutoff ? kSingularCutoff / top : 1.0);
    const Vector z0 = svd.solve(rhs);
    if ((system * z0 - rhs).lpNorm<Eigen::Infinity>() > 1e-9) continue;
    consider(support, z0);
    const int rank = static_cast<int>(svd.rank());
    if (rank < m + 1) {
      const Matrix null_space = svd.matrixV().rightCols(m + 1 - rank);
      for (int s = 0; s < kNullSpaceSamples; ++s) {
        Vector t(null_space.cols());
        for (Eigen::Index d = 0; d < t.size(); ++d) t(d) = rng.Uniform(-1.0, 1.0);
        consider(support, z0 + null_space * t);
      }
    }
  }
  return found;
}

nlohmann::ordered_json CertificateToJson(const EquilibriumCertificate& certificate) {
  nlohmann::ordered_json doc;
  doc["strategy"] = std::vector<double>(certificate.strategy.probs().data(),
                                        certificate.strategy.probs().data() +
                                            certificate.strategy.n());
  doc["support"] = certificate.support;
  doc["gap"] = certificate.gap;
  doc["well_supported_eps"] = certificate.well_supported_eps;
  doc["method"] = certificate.method;
  doc["game_units_gap"] = certificate.game_units_gap;
  return doc;
}

EquilibriumCertificate CertificateFromJson(const nlohmann::json& doc, const SymmetricGame& game) {
  if (!doc.is_object() || !doc.contains("strategy")) {
    throw std::invalid_argument("certificate JSON needs a \"strategy\" array");
  }
  const auto probs = doc["strategy"].get<std::vector<double>>();
  if (static_cast<int>(probs.size()) != game.n()) {
    throw std::invalid_argument("certificate strategy does not match the game dimension");
  }
  Vector x = Eigen::Map<const Vector>(probs.data(), static_cast<Eigen::Index>(probs.size()));
  return MakeCertificate(game, MixedStrategy(x, 1e-9),
                         doc.value("method", std::string("imported")));
}

}  // namespace hedge_nash
