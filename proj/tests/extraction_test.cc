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

#include <gtest/gtest.h>

#include "hedge_nash/rng.h"

namespace hedge_nash {
namespace {

SymmetricGame RpsNonneg() { return ValidateGame({{1, 0, 2}, {2, 1, 0}, {0, 2, 1}}); }
SymmetricGame Identity2() { return SymmetricGame(Matrix::Identity(2, 2)); }
SymmetricGame HawkDoveNormalized() { return NormalizePayoffs(ValidateGame({{0, 3}, {1, 2}})).game; }

TraceSnapshot SnapshotOf(const Vector& average) {
  return {1, average, Vector::Constant(average.size(), -std::log(average.size())), false};
}

TraceSnapshot RunTo(const SymmetricGame& game, const MixedStrategy& start, std::int64_t k) {
  TraceSnapshot snapshot;
  TrajectoryOptions options;
  options.max_step = k;
  options.emit_every = k;
  RunTrajectory(game, start, LearningRateSchedule::Default(), options,
                [&](const TraceRecord& record) {
                  if (record.k == k) {
                    snapshot = TraceSnapshot::FromRecord(
                        record, Trace{start, {}}.uniform_start());
                  }
                });
  return snapshot;
}

TEST(RankByAverageMass, Examples) {
  EXPECT_EQ(RankByAverageMass(SnapshotOf(Eigen::Vector3d(0.5, 0.3, 0.2))).order,
            (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(RankByAverageMass(SnapshotOf(Vector::Constant(3, 1.0 / 3))).order,
            (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(RankByAverageMass(SnapshotOf(Eigen::Vector3d(0.2, 0.3, 0.5))).order,
            (std::vector<int>{2, 1, 0}));
}

TEST(RankByAveragePayoff, Examples) {
  auto r = RankByAveragePayoff(Identity2(), SnapshotOf(Eigen::Vector2d(0.7, 0.3)));
  EXPECT_EQ(r.order, (std::vector<int>{0, 1}));
  EXPECT_NEAR(r.scores(0), 0.7, 1e-15);
  r = RankByAveragePayoff(RpsNonneg(), SnapshotOf(Vector::Constant(3, 1.0 / 3)));
  EXPECT_EQ(r.order, (std::vector<int>{0, 1, 2}));
  // C Xbar = (1*0.5 + 0 + 2*0.25, 2*0.5 + 1*0.25 + 0, 0 + 2*0.25 + 1*0.25).
  r = RankByAveragePayoff(RpsNonneg(), SnapshotOf(Eigen::Vector3d(0.5, 0.25, 0.25)));
  EXPECT_EQ(r.order, (std::vector<int>{1, 0, 2}));
  EXPECT_NEAR(r.scores(0), 1.0, 1e-15);
  EXPECT_NEAR(r.scores(1), 1.25, 1e-15);
  EXPECT_NEAR(r.scores(2), 0.75, 1e-15);
}

TEST(RankByIterateMass, Examples) {
  const TraceSnapshot id = RunTo(Identity2(), MixedStrategy::Uniform(2), 100);
  EXPECT_EQ(RankByIterateMass(id).order, (std::vector<int>{0, 1}));

  const SymmetricGame hd = HawkDoveNormalized();
  const TraceSnapshot snap = RunTo(hd, MixedStrategy::Uniform(2), 1000);
  EXPECT_EQ(RankByIterateMass(snap).order, RankByAveragePayoff(hd, snap).order);

  const TraceSnapshot skewed = RunTo(hd, MixedStrategy(Eigen::Vector2d(0.9, 0.1)), 10);
  EXPECT_THROW(RankByIterateMass(skewed), std::invalid_argument);
}

TEST(RankingAgreementProperty, UniformStartOrdersAgree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SymmetricGame game = GenerateGame(GameKind::kRandomUniform, 5, seed);
    const MixedStrategy start = MixedStrategy::Uniform(5);
    RunTrajectory(game, start, LearningRateSchedule::Default(), {2000, 50, false},
                  [&](const TraceRecord& record) {
                    const auto snap = TraceSnapshot::FromRecord(record, true);
                    const Ranking payoff = RankByAveragePayoff(game, snap);
                    const Ranking mass = RankByIterateMass(snap);
                    EXPECT_TRUE(RankingsAgree(mass, payoff, 1e-8))
                        << "seed " << seed << " K " << record.k;
                    EXPECT_TRUE(RankingsAgree(payoff, mass, 1e-8))
                        << "seed " << seed << " K " << record.k;
                  });
  }
}

TEST(RankingsAgree, DetectsDisagreement) {
  Ranking a{RankingCriterion::kAverageMass, {0, 1}, Eigen::Vector2d(0.6, 0.4), 0};
  Ranking b{RankingCriterion::kAverageMass, {1, 0}, Eigen::Vector2d(0.4, 0.6), 0};
  EXPECT_FALSE(RankingsAgree(a, b, 1e-8));
  Ranking near_tie{RankingCriterion::kAverageMass, {1, 0},
                   Eigen::Vector2d(0.5, 0.5 + 1e-12), 0};
  EXPECT_TRUE(RankingsAgree(a, near_tie, 1e-8));
}

TEST(ApproxBestResponseSet, Examples) {
  EXPECT_EQ(ApproxBestResponseSet(RpsNonneg(), SnapshotOf(Vector::Constant(3, 1.0 / 3)), 0.01),
            (IndexSet{0, 1, 2}));
  EXPECT_EQ(ApproxBestResponseSet(Identity2(), SnapshotOf(Eigen::Vector2d(0.7, 0.3)), 0.1),
            (IndexSet{0}));
  EXPECT_EQ(ApproxBestResponseSet(RpsNonneg(), SnapshotOf(Eigen::Vector3d(0.5, 0.25, 0.25)), 2.0),
            (IndexSet{0, 1, 2}));
  EXPECT_THROW(ApproxBestResponseSet(Identity2(), SnapshotOf(Eigen::Vector2d(0.7, 0.3)), 0.0),
               std::invalid_argument);
}

TEST(ExtractCertificate, RockPaperScissorsUniform) {
  const SymmetricGame rps = NormalizePayoffs(RpsNonneg()).game;
  for (std::int64_t k : {1, 10, 100}) {
    const auto result = ExtractCertificate(rps, RunTo(rps, MixedStrategy::Uniform(3), k));
    ASSERT_TRUE(result.certificate.has_value());
    EXPECT_EQ(result.certificate->method, "average_payoff:m=3");
    EXPECT_LE((result.certificate->strategy.probs() - Vector::Constant(3, 1.0 / 3))
                  .lpNorm<Eigen::Infinity>(),
              1e-9);
  }
}

TEST(ExtractCertificate, HawkDoveAverageMass) {
  const SymmetricGame hd = HawkDoveNormalized();
  const auto result = ExtractCertificate(hd, RunTo(hd, MixedStrategy::Uniform(2), 100000),
                                         {RankingCriterion::kAverageMass});
  ASSERT_TRUE(result.certificate.has_value());
  EXPECT_EQ(result.certificate->method, "average_mass:m=2");
  EXPECT_LE((result.certificate->strategy.probs() - Eigen::Vector2d(0.5, 0.5))
                .lpNorm<Eigen::Infinity>(),
            1e-9);
}

TEST(ExtractCertificate, IdentityLocksOntoDominantPure) {
  const SymmetricGame id = Identity2();
  const auto snap = RunTo(id, MixedStrategy(Eigen::Vector2d(0.9, 0.1)), 100000);
  const auto result = ExtractCertificate(id, snap);
  ASSERT_TRUE(result.certificate.has_value());
  EXPECT_EQ(result.certificate->method, "average_payoff:m=1");
  EXPECT_EQ(result.certificate->strategy.probs(), Eigen::Vector2d(1, 0));
  const auto oracle = EnumerateSymmetricEquilibria(id);
  EXPECT_TRUE(std::any_of(oracle.begin(), oracle.end(), [&](const EquilibriumCertificate& c) {
    return c.support == result.certificate->support;
  }));
  // The iterate-mass criterion is skipped without a uniform start.
  const auto skipped = ExtractCertificate(id, snap, {RankingCriterion::kIterateMass});
  EXPECT_FALSE(skipped.certificate.has_value());
  ASSERT_EQ(skipped.attempts.size(), 1u);
  EXPECT_NE(skipped.attempts[0].detail.find("uniform"), std::string::npos);
}

TEST(ExtractCertificateProperty, Soundness) {
  Rng rng(6);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SymmetricGame game = GenerateGame(GameKind::kRandomUniform, 4, seed);
    const auto result =
        ExtractCertificate(game, RunTo(game, MixedStrategy(rng.InteriorSimplexPoint(4)), 2000));
    if (!result.certificate) continue;
    // Recomputed directly from the payoff matrix, not from the LP.
    const Vector x = result.certificate->strategy.probs();
    const Vector cx = game.payoff() * x;
    EXPECT_LE(cx.maxCoeff() - x.dot(cx), kCertificateTolerance);
  }
}

TEST(CheckPolytopeProperty, Examples) {
  const SymmetricGame id = Identity2();
  std::vector<EquilibriumCertificate> pures = {
      MakeCertificate(id, MixedStrategy::Pure(2, 0), "manual"),
      MakeCertificate(id, MixedStrategy::Pure(2, 1), "manual")};
  const auto report = CheckPolytopeProperty(id, pures, 50);
  ASSERT_EQ(report.pairs.size(), 1u);
  EXPECT_FALSE(report.pairs[0].mutual_best_response);
  EXPECT_NEAR(report.pairs[0].best_response_shortfall, 1.0, 1e-15);
  EXPECT_EQ(report.pairs[0].samples, 0);
  EXPECT_TRUE(report.passed());

  const SymmetricGame flat = ValidateGame({{1, 1}, {1, 1}});
  std::vector<EquilibriumCertificate> flat_pures = {
      MakeCertificate(flat, MixedStrategy::Pure(2, 0), "manual"),
      MakeCertificate(flat, MixedStrategy::Pure(2, 1), "manual")};
  const auto flat_report = CheckPolytopeProperty(flat, flat_pures, 50);
  ASSERT_EQ(flat_report.pairs.size(), 1u);
  EXPECT_TRUE(flat_report.pairs[0].mutual_best_response);
  EXPECT_EQ(flat_report.pairs[0].samples, 50);
  EXPECT_EQ(flat_report.pairs[0].max_gap, 0.0);
  EXPECT_TRUE(flat_report.passed());

  const auto single = CheckPolytopeProperty(id, {pures[0]}, 50);
  EXPECT_TRUE(single.pairs.empty());
  EXPECT_TRUE(single.passed());

  EXPECT_THROW(CheckPolytopeProperty(flat, pures, 10), std::invalid_argument);
  const auto doc = PolytopeReportToJson(flat_report);
  EXPECT_TRUE(doc["passed"].get<bool>());
}

TEST(CheckPolytopePropertyProperty, OracleEquilibriaOfRandomGames) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SymmetricGame game = GenerateGame(GameKind::kDoublySymmetric, 4, seed);
    const auto certs = EnumerateSymmetricEquilibria(game);
    const auto report = CheckPolytopeProperty(game, certs, 20, seed);
    EXPECT_TRUE(report.passed()) << "seed " << seed;
  }
}

TEST(ApproxBestResponsePersistence, HawkDoveSupportPersists) {
  // With eps shrinking like 1 / A_K the oracle equilibrium's support stays in
  // the approximate best-response set from some observed step on. The
  // constant covers ln(X^0 max / X^0 min) + ln(1 / X^{K+1}(i)) for this start.
  const SymmetricGame hd = HawkDoveNormalized();
  const IndexSet oracle_support = EnumerateSymmetricEquilibria(hd).front().support;
  std::int64_t last_miss = -1;
  std::int64_t last_k = 0;
  RunTrajectory(hd, MixedStrategy(Eigen::Vector2d(0.8, 0.2)), LearningRateSchedule::Default(),
                {100000, 1000, false}, [&](const TraceRecord& record) {
                  const auto snap = TraceSnapshot::FromRecord(record, false);
                  const double eps = 4.0 / record.weight_sum;
                  const IndexSet br = ApproxBestResponseSet(hd, snap, eps);
                  for (int i : oracle_support) {
                    if (std::find(br.begin(), br.end(), i) == br.end()) last_miss = record.k;
                  }
                  last_k = record.k;
                });
  EXPECT_LT(last_miss, last_k / 2);
}

}  // namespace
}  // namespace hedge_nash
