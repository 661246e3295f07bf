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

#include "hedge_nash/extraction.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hedge_nash/rng.h"

namespace hedge_nash {

std::string CriterionName(RankingCriterion criterion) {
  switch (criterion) {
    case RankingCriterion::kAverageMass: return "average_mass";
    case RankingCriterion::kAveragePayoff: return "average_payoff";
    case RankingCriterion::kIterateMass: return "iterate_mass";
  }
  return "unknown";
}

RankingCriterion ParseCriterion(const std::string& name) {
  if (name == "average_mass") return RankingCriterion::kAverageMass;
  if (name == "average_payoff") return RankingCriterion::kAveragePayoff;
  if (name == "iterate_mass") return RankingCriterion::kIterateMass;
  throw std::invalid_argument("unknown ranking criterion: " + name);
}

TraceSnapshot TraceSnapshot::FromRecord(const TraceRecord& record, bool uniform_start) {
  return {record.k, record.average, record.next_log_iterate, uniform_start};
}

TraceSnapshot TraceSnapshot::FromRow(const TraceRow& row, bool uniform_start) {
  return {row.k, row.average, row.iterate.array().log().matrix(), uniform_start};
}

namespace {

std::vector<int> DescendingOrder(const Vector& keys) {
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&keys](int a, int b) { return keys(a) > keys(b); });
  return order;
}

}  // namespace

Ranking RankByAverageMass(const TraceSnapshot& snapshot) {
  return {RankingCriterion::kAverageMass, DescendingOrder(snapshot.average), snapshot.average,
          snapshot.k};
}

Ranking RankByAveragePayoff(const SymmetricGame& game, const TraceSnapshot& snapshot) {
  const Vector payoff = game.payoff() * snapshot.average;
  return {RankingCriterion::kAveragePayoff, DescendingOrder(payoff), payoff, snapshot.k};
}

Ranking RankByIterateMass(const TraceSnapshot& snapshot) {
  if (!snapshot.uniform_start) {
    throw std::invalid_argument("iterate-mass ranking requires a uniform start");
  }
  // Ordering on log mass avoids false ties between underflowed entries.
  return {RankingCriterion::kIterateMass, DescendingOrder(snapshot.next_log_iterate),
          snapshot.next_log_iterate.array().exp().matrix(), snapshot.k};
}

bool RankingsAgree(const Ranking& ranking, const Ranking& reference, double tolerance) {
  const auto n = static_cast<int>(reference.order.size());
  if (static_cast<int>(ranking.order.size()) != n) return false;
  std::vector<int> position(n);
  for (int p = 0; p < n; ++p) position[ranking.order[p]] = p;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (reference.scores(i) - reference.scores(j) > tolerance && position[i] > position[j]) {
        return false;
      }
    }
  }
  return true;
}

IndexSet ApproxBestResponseSet(const SymmetricGame& game, const TraceSnapshot& snapshot,
                               double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const Vector payoff = game.payoff() * snapshot.average;
  const double best = payoff.maxCoeff();
  IndexSet out;
  for (int i = 0; i < game.n(); ++i) {
    if (best - payoff(i) <= eps) out.push_back(i);
  }
  return out;
}

ExtractionResult ExtractCertificate(const SymmetricGame& game, const TraceSnapshot& snapshot,
                                    const std::vector<RankingCriterion>& criteria,
                                    double tolerance) {
  ExtractionResult result;
  for (RankingCriterion criterion : criteria) {
    CriterionAttempt attempt{criterion, {}, 0, ""};
    if (criterion == RankingCriterion::kIterateMass && !snapshot.uniform_start) {
      attempt.detail = "skipped: iterate-mass ranking requires a uniform start";
      result.attempts.push_back(std::move(attempt));
      continue;
    }
    Ranking ranking = criterion == RankingCriterion::kAverageMass
                          ? RankByAverageMass(snapshot)
                      : criterion == RankingCriterion::kAveragePayoff
                          ? RankByAveragePayoff(game, snapshot)
                          : RankByIterateMass(snapshot);
    attempt.order = ranking.order;
    for (int m = 1; m <= game.n(); ++m) {
      IndexSet prefix(ranking.order.begin(), ranking.order.begin() + m);
      std::sort(prefix.begin(), prefix.end());
      auto certificate = VerifySupport(game, prefix, tolerance);
      if (certificate) {
        attempt.prefix = m;
        attempt.detail = "verified top-" + std::to_string(m) + " prefix";
        certificate->method = CriterionName(criterion) + ":m=" + std::to_string(m);
        result.certificate = std::move(certificate);
        result.attempts.push_back(std::move(attempt));
        return result;
      }
    }
    attempt.detail = "no prefix of the ranking supports an equilibrium";
    result.attempts.push_back(std::move(attempt));
  }
  return result;
}

bool PolytopeReport::passed() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PolytopePair& p) { return p.passed; });
}

nlohmann::ordered_json PolytopeReportToJson(const PolytopeReport& report) {
  nlohmann::ordered_json doc;
  doc["passed"] = report.passed();
  auto& pairs = doc["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : report.pairs) {
    nlohmann::ordered_json entry;
    entry["first"] = p.first;
    entry["second"] = p.second;
    entry["mutual_best_response"] = p.mutual_best_response;
    entry["best_response_shortfall"] = p.best_response_shortfall;
    entry["samples"] = p.samples;
    entry["max_gap"] = p.max_gap;
    entry["passed"] = p.passed;
    pairs.push_back(std::move(entry));
  }
  return doc;
}

PolytopeReport CheckPolytopeProperty(const SymmetricGame& game,
                                     const std::vector<EquilibriumCertificate>& certificates,
                                     int samples, std::uint64_t seed) {
  const std::uint64_t fingerprint = game.fingerprint();
  for (const auto& cert : certificates) {
    if (cert.strategy.n() != game.n() ||
        (cert.game_fingerprint != 0 && cert.game_fingerprint != fingerprint)) {
      throw std::invalid_argument("certificate belongs to a different game");
    }
  }
  Rng rng(seed);
  PolytopeReport report;
  const int count = static_cast<int>(certificates.size());
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      const Vector& xa = certificates[a].strategy.probs();
      const Vector& xb = certificates[b].strategy.probs();
      const PayoffVector pa = ComputePayoffs(game, xa);
      const PayoffVector pb = ComputePayoffs(game, xb);
      PolytopePair pair;
      pair.first = a;
      pair.second = b;
      pair.best_response_shortfall =
          std::max(pb.max - xa.dot(pb.values), pa.max - xb.dot(pa.values));
      pair.mutual_best_response = pair.best_response_shortfall <= kMutualBestResponseTolerance;
      if (pair.mutual_best_response) {
        // Line X_a + t (X_b - X_a), clipped to the simplex.
        const Vector d = xb - xa;
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (int i = 0; i < game.n(); ++i) {
          if (d(i) > 0.0) lo = std::max(lo, -xa(i) / d(i));
          if (d(i) < 0.0) hi = std::min(hi, xa(i) / -d(i));
        }
        if (!std::isfinite(lo) || !std::isfinite(hi)) lo = hi = 0.0;
        for (int s = 0; s < samples; ++s) {
          const double t = rng.Uniform(lo, hi);
          const Vector x = (xa + t * d).cwiseMax(0.0);
          pair.max_gap = std::max(pair.max_gap, EpsilonGap(game, Vector(x / x.sum())));
          ++pair.samples;
        }
        pair.passed = pair.max_gap <= kPolytopeGapTolerance;
      }
      report.pairs.push_back(pair);
    }
  }
  return report;
}

}  // namespace hedge_nash
