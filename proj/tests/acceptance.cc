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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. The first argument, when given, is the
// path of the command-line tool used by the reproducibility criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hedge_nash/diagnostics.h"
#include "hedge_nash/equilibrium.h"
#include "hedge_nash/extraction.h"
#include "hedge_nash/game.h"
#include "hedge_nash/hedge.h"
#include "hedge_nash/lp.h"
#include "hedge_nash/rng.h"
#include "hedge_nash/schedule.h"

namespace hedge_nash {
namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

class Suite {
 public:
  void Run(int id, const std::string& title, double time_limit_seconds,
           const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = time_limit_seconds <= 0.0 || seconds <= time_limit_seconds;
    const bool passed = outcome.passed && in_time;
    all_passed_ = all_passed_ && passed;
    std::ostringstream line;
    line << (passed ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " — "
         << outcome.detail;
    line.precision(3);
    line << std::fixed << " [" << seconds << " s";
    if (time_limit_seconds > 0.0) line << " / limit " << time_limit_seconds << " s";
    line << "]";
    if (!in_time) line << " (time limit exceeded)";
    std::cout << line.str() << std::endl;
  }
  bool all_passed() const { return all_passed_; }

 private:
  bool all_passed_ = true;
};

std::string Num(double v) {
  std::ostringstream out;
  out.precision(4);
  out << std::scientific << v;
  return out.str();
}

Matrix RpsNormalized() {
  Matrix c(3, 3);
  c << 0.5, 0, 1, 1, 0.5, 0, 0, 1, 0.5;
  return c;
}

SymmetricGame HawkDoveNormalized() { return NormalizePayoffs(ValidateGame({{0, 3}, {1, 2}})).game; }

std::vector<std::pair<std::string, SymmetricGame>> DiagnosticGameSet() {
  std::vector<std::pair<std::string, SymmetricGame>> games = {
      {"identity", SymmetricGame(Matrix::Identity(2, 2))},
      {"rps", SymmetricGame(RpsNormalized())},
      {"hawk_dove", HawkDoveNormalized()}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    games.emplace_back("random5_seed" + std::to_string(seed),
                       GenerateGame(GameKind::kRandomUniform, 5, seed));
  }
  return games;
}

// Criteria 1 and 8 share one run.
struct ZeroSumRun {
  double gap = 0.0;
  double certified_bound = 0.0;
  double worst_contraction_excess = 0.0;
  double final_step_norm = 0.0;
  std::int64_t records = 0;
  bool done = false;
};

ZeroSumRun& ZeroSumResult() {
  static ZeroSumRun run;
  if (run.done) return run;
  constexpr std::int64_t kSteps = 1000000;
  const SymmetricGame game(RpsNormalized());
  const MixedStrategy start(Eigen::Vector3d(0.6, 0.2, 0.2));
  const LearningRateSchedule schedule = LearningRateSchedule::Default();
  TraceRecord last;
  RunTrajectory(game, start, schedule, TrajectoryOptions{kSteps, 1, false},
                [&](const TraceRecord& r) {
                  const double bound = r.alpha / r.weight_sum * std::sqrt(2.0);
                  run.worst_contraction_excess =
                      std::max(run.worst_contraction_excess, r.average_step_norm - bound);
                  ++run.records;
                  if (r.k == kSteps) last = r;
                });
  run.gap = last.gap_average;
  run.final_step_norm = last.average_step_norm;
  // Telescoped upper entropy bound: gap <= (max_Y RE(Y, X^0) + sum alpha (e^alpha - 1)) / A_K,
  // with max_Y RE(Y, X^0) = -ln min_i X^0(i).
  double penalty = 0.0;
  for (std::int64_t k = 0; k <= kSteps; ++k) {
    const double a = schedule.Rate(k);
    penalty += a * std::expm1(a);
  }
  run.certified_bound = (-std::log(start.probs().minCoeff()) + penalty) / last.weight_sum;
  run.done = true;
  return run;
}

Outcome Criterion1() {
  const ZeroSumRun& run = ZeroSumResult();
  const bool ok = run.gap <= 0.05 && run.certified_bound <= 0.05;
  return {ok, "gap(Xbar^K) = " + Num(run.gap) + " <= 0.05; certified bound " +
                  Num(run.certified_bound)};
}

Outcome Criterion2() {
  double worst = 0.0;
  double worst_gap = 0.0;
  for (const SymmetricGame& game :
       {SymmetricGame(Matrix::Identity(2, 2)), SymmetricGame(RpsNormalized())}) {
    const int n = game.n();
    const Vector uniform = Vector::Constant(n, 1.0 / n);
    for (const auto& schedule :
         {LearningRateSchedule::Default(), LearningRateSchedule::Harmonic()}) {
      RunTrajectory(game, MixedStrategy::Uniform(n), schedule, TrajectoryOptions{10000, 1, false},
                    [&](const TraceRecord& r) {
                      worst = std::max(worst, (r.iterate - uniform).cwiseAbs().maxCoeff());
                      worst = std::max(worst, (r.average - uniform).cwiseAbs().maxCoeff());
                      worst_gap = std::max({worst_gap, r.gap_average, r.gap_iterate});
                    });
    }
  }
  // Uniform 1/3 is not representable, so "gap 0" is read at the same 1e-12
  // resolution as the strategies themselves.
  return {worst <= 1e-12 && worst_gap <= 1e-12,
          "max deviation from uniform " + Num(worst) + ", max gap " + Num(worst_gap)};
}

Outcome Criterion3() {
  const SymmetricGame game = HawkDoveNormalized();
  std::vector<MixedStrategy> starts = {MixedStrategy::Uniform(2)};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Rng rng(seed);
    starts.emplace_back(rng.InteriorSimplexPoint(2));
  }
  double worst = 0.0;
  for (const auto& start : starts) {
    TraceRecord last;
    RunTrajectory(game, start, LearningRateSchedule::Default(),
                  TrajectoryOptions{1000000, 1000000, false},
                  [&](const TraceRecord& r) { last = r; });
    worst = std::max(worst, (last.average - Eigen::Vector2d(0.5, 0.5)).cwiseAbs().maxCoeff());
  }
  return {worst <= 0.05, "max ||Xbar^K - (0.5,0.5)||_inf over 4 starts = " + Num(worst)};
}

Outcome Criterion4() {
  double pointwise = 0.0;
  double accumulated = 0.0;
  bool ok = true;
  int games = 0;
  for (const auto& [name, game] : DiagnosticGameSet()) {
    const DiagnosticsReport report = DiagnoseEntropyBounds(game, 1000, 7);
    ok = ok && report.passed();
    for (const auto& check : report.checks) {
      ok = ok && check.samples >= 1000;
      if (check.name == "log_mass_bound") {
        accumulated = std::max(accumulated, check.max_violation);
      } else {
        pointwise = std::max(pointwise, check.max_violation);
      }
    }
    ++games;
  }
  return {ok && pointwise <= 1e-9 && accumulated <= 1e-8,
          std::to_string(games) + " games; max pointwise violation " + Num(pointwise) +
              ", max accumulated violation " + Num(accumulated)};
}

Outcome Criterion5() {
  double worst = 0.0;
  bool ok = true;
  for (const auto& [name, game] : DiagnosticGameSet()) {
    const Trace trace = RunTrajectory(game, MixedStrategy::Uniform(game.n()),
                                      LearningRateSchedule::Default(),
                                      TrajectoryOptions{10000, 1, false});
    const DiagnosticsReport report = DiagnoseTrajectoryIdentities(game, trace);
    ok = ok && report.passed() && report.checks.size() == 3;
    for (const auto& check : report.checks) worst = std::max(worst, check.max_violation);
  }
  return {ok && worst <= 1e-8, "max violation " + Num(worst) + " (tolerance 1e-8)"};
}

Outcome Criterion6() {
  constexpr int kGames = 100;
  constexpr std::int64_t kSteps = 100000;
  int succeeded = 0;
  int mismatched = 0;
  for (int g = 0; g < kGames; ++g) {
    const SymmetricGame game = GenerateGame(GameKind::kRandomUniform, 4, g);
    TraceSnapshot snapshot;
    RunTrajectory(game, MixedStrategy::Uniform(4), LearningRateSchedule::Default(),
                  TrajectoryOptions{kSteps, kSteps, false}, [&](const TraceRecord& r) {
                    if (r.k == kSteps) snapshot = TraceSnapshot::FromRecord(r, true);
                  });
    const ExtractionResult result = ExtractCertificate(game, snapshot);
    if (!result.certificate) {
      std::ostringstream log;
      log << "  criterion 6: game seed " << g << " extraction failed; Xbar^K = ["
          << snapshot.average.transpose() << "], C Xbar^K = ["
          << (game.payoff() * snapshot.average).transpose() << "]";
      std::cout << log.str() << std::endl;
      continue;
    }
    ++succeeded;
    const auto& cert = *result.certificate;
    const auto oracle = EnumerateSymmetricEquilibria(game);
    bool matched = false;
    for (const auto& o : oracle) {
      if (o.support == cert.support &&
          (o.strategy.probs() - cert.strategy.probs()).lpNorm<Eigen::Infinity>() <= 1e-6) {
        matched = true;
      }
    }
    if (!matched) {
      ++mismatched;
      std::ostringstream log;
      log << "  criterion 6: game seed " << g << " certificate (" << cert.method
          << ") not reproduced by the oracle; X = [" << cert.strategy.probs().transpose()
          << "], Xbar^K = [" << snapshot.average.transpose() << "]";
      std::cout << log.str() << std::endl;
    }
  }
  return {succeeded >= 95 && mismatched == 0,
          std::to_string(succeeded) + "/" + std::to_string(kGames) +
              " extracted (need >= 95), " + std::to_string(mismatched) +
              " certificates not matched by the oracle"};
}

Outcome Criterion7() {
  const SymmetricGame rps = ValidateGame({{1, 0, 2}, {2, 1, 0}, {0, 2, 1}});
  const SymmetricGame id(Matrix::Identity(2, 2));
  const SymmetricGame dominated = ValidateGame({{1, 1}, {0, 0}});
  const LPResult rps_lp = SolveLP(AssembleEqualizerLP(rps));
  const LPResult id_lp = SolveLP(AssembleEqualizerLP(id));
  double rps_err = INFINITY;
  double id_err = INFINITY;
  if (rps_lp.status == LPStatus::kOptimal) {
    rps_err = (rps_lp.solution.head(3) - Vector::Constant(3, 1.0 / 3)).cwiseAbs().maxCoeff();
  }
  if (id_lp.status == LPStatus::kOptimal) {
    id_err = (id_lp.solution.head(2) - Vector::Constant(2, 0.5)).cwiseAbs().maxCoeff();
  }
  const bool infeasible =
      SolveLP(AssembleEqualizerLP(dominated)).status == LPStatus::kInfeasible &&
      !FindEqualizer(dominated).has_value();
  const double min_gap = MinEqualizerGap(dominated).gap;
  const bool ok = rps_err <= 1e-9 && id_err <= 1e-9 && infeasible && std::abs(min_gap - 1) <= 1e-8;
  return {ok, "RPS error " + Num(rps_err) + ", identity error " + Num(id_err) +
                  ", dominated game infeasible: " + (infeasible ? "yes" : "no") +
                  ", min spread " + Num(min_gap)};
}

Outcome Criterion8() {
  const ZeroSumRun& run = ZeroSumResult();
  const bool ok = run.worst_contraction_excess <= 0.0 && run.final_step_norm < 1e-4 &&
                  run.records == 1000001;
  return {ok, "max(||Xbar^K - Xbar^{K-1}|| - sqrt(2) alpha_K / A_K) = " +
                  Num(run.worst_contraction_excess) + " over " + std::to_string(run.records) +
                  " steps; final step " + Num(run.final_step_norm)};
}

Outcome Criterion9() {
  Rng rng(9);
  double worst = 0.0;
  int support_mismatches = 0;
  for (int s = 0; s < 1000; ++s) {
    const int n = 2 + static_cast<int>(rng.Below(5));
    const SymmetricGame game = GenerateGame(GameKind::kRandomUniform, n, rng.Next());
    const MixedStrategy x(rng.InteriorSimplexPoint(n));
    const double alpha = rng.Uniform(0.01, 2.0);
    const Vector base = HedgeStep(game, x, alpha).probs();

    const double b = rng.Uniform(-1.0, 1.0);
    const SymmetricGame shifted((game.payoff().array() + b).matrix());
    worst = std::max(worst, (HedgeStep(shifted, x, alpha).probs() - base).cwiseAbs().maxCoeff());

    const double a = rng.Uniform(1e-3, 2.0);
    const SymmetricGame scaled(Matrix(a * game.payoff()));
    worst = std::max(worst, (HedgeStep(scaled, x, alpha).probs() -
                             HedgeStep(game, x, a * alpha).probs())
                                .cwiseAbs()
                                .maxCoeff());

    const double ga = rng.Uniform(0.01, 10.0);
    const double gb = rng.Uniform(-5.0, 5.0);
    const SymmetricGame mapped((ga * game.payoff()).array() + gb);
    const MixedStrategy y(rng.InteriorSimplexPoint(n));
    worst = std::max(worst, std::abs(EpsilonGap(mapped, y) - ga * EpsilonGap(game, y)));

    if (n <= 4) {
      const auto original = FindEqualizer(game);
      const auto transformed = FindEqualizer(mapped);
      if (original.has_value() != transformed.has_value() ||
          (original && original->support != transformed->support)) {
        ++support_mismatches;
      }
      IndexSet carrier;
      for (int i = 0; i < n; ++i) {
        if (rng.Below(2) || (i == n - 1 && carrier.empty())) carrier.push_back(i);
      }
      const auto c1 = VerifySupport(game, carrier);
      const auto c2 = VerifySupport(mapped, carrier);
      if (c1.has_value() != c2.has_value() || (c1 && c1->support != c2->support)) {
        ++support_mismatches;
      }
    }
  }
  return {worst <= 1e-10 && support_mismatches == 0,
          "1000 samples; max violation " + Num(worst) + ", certificate support mismatches " +
              std::to_string(support_mismatches)};
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome Criterion10(const std::string& cli) {
  if (cli.empty()) return {false, "no command-line tool path given"};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("hedge_nash_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  auto command = [&](const std::filesystem::path& out) {
    return "\"" + cli + "\" run --game gen:random_uniform:5:3 --schedule power:2/3" +
           " --x0 random --seed 17 --steps 20000 --emit-every 7 --out \"" + out.string() +
           "\" --summary \"" + (dir / "summary.json").string() + "\"";
  };
  const int rc_a = std::system(command(a).c_str());
  const int rc_b = std::system(command(b).c_str());
  const std::string ta = ReadFile(a);
  const std::string tb = ReadFile(b);
  std::filesystem::remove_all(dir);
  const bool ok = rc_a == 0 && rc_b == 0 && !ta.empty() && ta == tb;
  return {ok, "two CLI runs: " + std::to_string(ta.size()) + " bytes, " +
                  (ta == tb ? "byte-identical" : "DIFFERENT")};
}

}  // namespace
}  // namespace hedge_nash

int main(int argc, char** argv) {
  using namespace hedge_nash;
  // Usage: acceptance [CLI_PATH] [CRITERION...]; with no criteria, runs all.
  const std::string cli = argc > 1 ? argv[1] : "";
  std::vector<int> only;
  for (int i = 2; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  auto selected = [&](int id) {
    return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
  };
  Suite suite;
  struct Entry {
    int id;
    const char* title;
    double limit;
    std::function<Outcome()> body;
  };
  const std::vector<Entry> entries = {
      {1, "zero-sum certified convergence (RPS, K = 10^6)", 60, Criterion1},
      {2, "fixed-point exactness (identity, RPS, uniform start)", 1, Criterion2},
      {3, "unique-equilibrium convergence (Hawk-Dove, K = 10^6)", 30, Criterion3},
      {4, "entropy-inequality suite (23 games x 1000 samples)", 60, Criterion4},
      {5, "trajectory-identity suite (23 games, K = 10^4)", 60, Criterion5},
      {6, "oracle equivalence of extraction (100 random 4x4, K = 10^5)", 900, Criterion6},
      {7, "LP correctness", 1, Criterion7},
      {8, "successive-average contraction (criterion 1 run)", 0, Criterion8},
      {9, "invariance suite (1000 samples)", 10, Criterion9},
      {10, "reproducibility (byte-identical CSV)", 0, [&] { return Criterion10(cli); }},
  };
  for (const auto& e : entries) {
    if (selected(e.id)) suite.Run(e.id, e.title, e.limit, e.body);
  }
  return suite.all_passed() ? 0 : 1;
}
