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

#include "hedge_nash/diagnostics.h"

#include <array>
#include <cmath>
#include <stdexcept>

#include "hedge_nash/rng.h"

namespace hedge_nash {

bool DiagnosticsReport::passed() const {
  for (const auto& check : checks) {
    if (!check.passed()) return false;
  }
  return true;
}

const DiagnosticCheck& DiagnosticsReport::Find(const std::string& name) const {
  for (const auto& check : checks) {
    if (check.name == name) return check;
  }
  throw std::out_of_range("no diagnostic named " + name);
}

nlohmann::ordered_json ReportToJson(const DiagnosticsReport& report) {
  nlohmann::ordered_json doc;
  doc["passed"] = report.passed();
  auto& checks = doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& check : report.checks) {
    nlohmann::ordered_json entry;
    entry["name"] = check.name;
    entry["samples"] = check.samples;
    entry["max_violation"] = check.max_violation;
    entry["tolerance"] = check.tolerance;
    entry["passed"] = check.passed();
    entry["vacuous"] = check.vacuous();
    checks.push_back(std::move(entry));
  }
  return doc;
}

double EntropyBoundTerms::upper_violation() const {
  return re_after - (re_before - drift + alpha * std::expm1(alpha));
}

double EntropyBoundTerms::lower_violation() const {
  return (re_before - drift) - re_after;
}

EntropyBoundTerms EvaluateEntropyBounds(const SymmetricGame& game, const Vector& log_x,
                                        const Vector& y, double alpha) {
  const Vector x = log_x.array().exp().matrix();
  const Vector cx = game.payoff() * x;
  const Vector log_t = LogNormalize(log_x + alpha * cx);
  EntropyBoundTerms terms;
  terms.re_after = RelativeEntropyFromLog(y, log_t);
  terms.re_before = RelativeEntropyFromLog(y, log_x);
  terms.drift = alpha * (y - x).dot(cx);
  terms.alpha = alpha;
  return terms;
}

namespace {

constexpr std::array<double, 5> kAlphaGrid = {0.0, 0.25, 0.5, 1.0, 2.0};
constexpr int kRandomAlphas = 10;
constexpr int kShortRunSteps = 20;

Vector RandomComparator(Rng& rng, int n) {
  switch (rng.Below(3)) {
    case 0:
      return rng.InteriorSimplexPoint(n);
    case 1:
      return Vector::Unit(n, rng.Below(n));
    default: {
      IndexSet face;
      while (face.empty()) {
        for (int i = 0; i < n; ++i) {
          if (rng.Below(2)) face.push_back(i);
        }
      }
      const Vector w = rng.InteriorSimplexPoint(static_cast<int>(face.size()));
      Vector y = Vector::Zero(n);
      for (std::size_t k = 0; k < face.size(); ++k) y(face[k]) = w(static_cast<Eigen::Index>(k));
      return y;
    }
  }
}

double ReAfterStep(const Vector& log_x, const Vector& cx, const Vector& y, double alpha) {
  return RelativeEntropyFromLog(y, LogNormalize(log_x + alpha * cx));
}

}  // namespace

DiagnosticsReport DiagnoseEntropyBounds(const SymmetricGame& game, std::int64_t samples,
                                        std::uint64_t seed) {
  if (!game.normalized()) {
    throw std::invalid_argument("entropy diagnostics need payoffs in [0, 1]");
  }
  DiagnosticCheck convexity{"convexity", 0, 0.0, kPointwiseBoundTolerance};
  DiagnosticCheck upper{"upper_bound", 0, 0.0, kPointwiseBoundTolerance};
  DiagnosticCheck lower{"lower_bound", 0, 0.0, kPointwiseBoundTolerance};
  DiagnosticCheck log_mass{"log_mass_bound", 0, 0.0, kAccumulatedBoundTolerance};

  const int n = game.n();
  Rng rng(seed);
  std::vector<double> alphas;
  std::vector<double> values;
  for (std::int64_t s = 0; s < samples; ++s) {
    const Vector x = rng.InteriorSimplexPoint(n);
    const Vector log_x = x.array().log().matrix();
    const Vector y = RandomComparator(rng, n);
    const Vector cx = game.payoff() * x;

    alphas.assign(kAlphaGrid.begin(), kAlphaGrid.end());
    for (int r = 0; r < kRandomAlphas; ++r) alphas.push_back(rng.Uniform(0.0, 2.0));

    values.clear();
    for (double alpha : alphas) {
      const EntropyBoundTerms terms = EvaluateEntropyBounds(game, log_x, y, alpha);
      upper.Record(std::max(0.0, terms.upper_violation()));
      lower.Record(std::max(0.0, terms.lower_violation()));
      values.push_back(terms.re_after);
    }
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      for (std::size_t b = a + 1; b < alphas.size(); ++b) {
        const double mid = ReAfterStep(log_x, cx, y, 0.5 * (alphas[a] + alphas[b]));
        convexity.Record(std::max(0.0, mid - 0.5 * (values[a] + values[b])));
      }
    }

    const Vector start = rng.InteriorSimplexPoint(n);
    const LearningRateSchedule schedule =
        rng.Below(2) ? LearningRateSchedule::Default() : LearningRateSchedule::Harmonic();
    TrajectoryState state(game, MixedStrategy(start));
    const Vector log_start = state.LogIterate();
    for (int k = 0; k < kShortRunSteps; ++k) {
      state.Advance(schedule.Rate(k));
      const double a_k = state.average().weight_sum();
      const Vector average_payoff = game.payoff() * state.average().Mean();
      const Vector log_next = state.LogIterate();
      for (int i = 0; i < n; ++i) {
        const double lhs = (log_next(i) - log_start(i)) / a_k;
        const double rhs = average_payoff(i) - state.weighted_self_payoff() / a_k;
        log_mass.Record(std::max(0.0, lhs - rhs));
      }
    }
  }
  return DiagnosticsReport{{convexity, upper, lower, log_mass}};
}

DiagnosticsReport DiagnoseTrajectoryIdentities(const SymmetricGame& game, const Trace& trace,
                                               const TrajectoryIdentityOptions& options) {
  if (options.sign_identity && !trace.uniform_start()) {
    throw std::invalid_argument("the sign identity check requires a uniform start");
  }
  DiagnosticCheck sign{"sign_identity", 0, 0.0, options.tolerance};
  DiagnosticCheck lower{"payoff_lower_bound", 0, 0.0, options.tolerance};
  DiagnosticCheck best_response{"best_response_bound", 0, 0.0, options.tolerance};

  const int n = game.n();
  const Vector& start = trace.start.probs();
  const double log_c = std::log(start.minCoeff() / start.maxCoeff());
  for (const TraceRecord& record : trace.records) {
    if (record.next_log_iterate.size() != n) {
      throw std::invalid_argument("trace record lacks the next iterate");
    }
    const double a_k = record.weight_sum;
    const Vector payoff = game.payoff() * record.average;
    const double best = payoff.maxCoeff();
    const Vector& log_next = record.next_log_iterate;
    if (options.sign_identity) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double lhs = (log_next(i) - log_next(j)) / a_k;
          sign.Record(std::abs(lhs - (payoff(i) - payoff(j))));
        }
      }
    }
    if (options.lower_payoff_bound) {
      for (int i = 0; i < n; ++i) {
        const double rhs = (log_c + log_next(i)) / a_k;
        lower.Record(std::max(0.0, rhs - (payoff(i) - best)));
      }
    }
    if (options.best_response_bound) {
      const Vector next = log_next.array().exp().matrix();
      const double value = next.dot(payoff) - record.weighted_self_payoff / a_k;
      best_response.Record(std::max(0.0, -value));
    }
  }
  DiagnosticsReport report;
  if (options.sign_identity) report.checks.push_back(sign);
  if (options.lower_payoff_bound) report.checks.push_back(lower);
  if (options.best_response_bound) report.checks.push_back(best_response);
  return report;
}

}  // namespace hedge_nash
