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

#ifndef HEDGE_NASH_EXTRACTION_H_
#define HEDGE_NASH_EXTRACTION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hedge_nash/equilibrium.h"
#include "hedge_nash/hedge.h"
#include "hedge_nash/trace_io.h"

namespace hedge_nash {

enum class RankingCriterion { kAverageMass, kAveragePayoff, kIterateMass };

std::string CriterionName(RankingCriterion criterion);
RankingCriterion ParseCriterion(const std::string& name);

inline const std::vector<RankingCriterion> kDefaultCriteria = {
    RankingCriterion::kAveragePayoff, RankingCriterion::kAverageMass,
    RankingCriterion::kIterateMass};

// What the rankings read from a run at step K.
struct TraceSnapshot {
  std::int64_t k = 0;
  Vector average;           // Xbar^K
  Vector next_log_iterate;  // ln X^{K+1}
  bool uniform_start = false;

  static TraceSnapshot FromRecord(const TraceRecord& record, bool uniform_start);
  // Persisted traces hold X^K rather than X^{K+1}; the row's iterate stands
  // in for the next one.
  static TraceSnapshot FromRow(const TraceRow& row, bool uniform_start);
};

struct Ranking {
  RankingCriterion criterion;
  std::vector<int> order;  // descending score, ties by ascending index
  Vector scores;
  std::int64_t k = 0;
};

Ranking RankByAverageMass(const TraceSnapshot& snapshot);
// Scores (C Xbar^K)_i.
Ranking RankByAveragePayoff(const SymmetricGame& game, const TraceSnapshot& snapshot);
// Scores X^{K+1}(i). Throws std::invalid_argument unless the run started
// uniform.
Ranking RankByIterateMass(const TraceSnapshot& snapshot);

// True if every pair whose `reference` scores differ by more than `tolerance`
// is ordered the same way in `ranking`.
bool RankingsAgree(const Ranking& ranking, const Ranking& reference, double tolerance);

// { i : (C Xbar^K)_max - (C Xbar^K)_i <= eps }. Throws for eps <= 0.
IndexSet ApproxBestResponseSet(const SymmetricGame& game, const TraceSnapshot& snapshot,
                               double eps);

struct CriterionAttempt {
  RankingCriterion criterion;
  std::vector<int> order;
  int prefix = 0;  // m of the successful prefix, 0 if none
  std::string detail;
};

struct ExtractionResult {
  std::optional<EquilibriumCertificate> certificate;
  std::vector<CriterionAttempt> attempts;
};

// For each criterion in turn, tries the top-m prefix of its ranking as a
// support, m = 1..n, and returns the first verified certificate.
ExtractionResult ExtractCertificate(const SymmetricGame& game, const TraceSnapshot& snapshot,
                                    const std::vector<RankingCriterion>& criteria =
                                        kDefaultCriteria,
                                    double tolerance = kCertificateTolerance);

struct PolytopePair {
  int first = 0;
  int second = 0;
  bool mutual_best_response = false;
  double best_response_shortfall = 0.0;
  std::int64_t samples = 0;
  double max_gap = 0.0;
  bool passed = true;
};

struct PolytopeReport {
  std::vector<PolytopePair> pairs;
  bool passed() const;
};

nlohmann::ordered_json PolytopeReportToJson(const PolytopeReport& report);

inline constexpr double kMutualBestResponseTolerance = 1e-8;
inline constexpr double kPolytopeGapTolerance = 1e-7;

// For every pair of certificates, checks mutual best response; for mutual
// pairs, samples the line through both (restricted to the simplex) and
// checks every sampled point is an equilibrium. Throws
// std::invalid_argument for certificates from a different game.
PolytopeReport CheckPolytopeProperty(const SymmetricGame& game,
                                     const std::vector<EquilibriumCertificate>& certificates,
                                     int samples, std::uint64_t seed = 1);

}  // namespace hedge_nash

#endif  // HEDGE_NASH_EXTRACTION_H_
