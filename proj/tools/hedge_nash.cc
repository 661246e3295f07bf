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

// Command-line front end: run Hedge trajectories, extract and verify
// equilibrium certificates, query the support-enumeration oracle, and run the
// entropy and trajectory diagnostics.
//
// Exit codes: 0 success / verified, 1 verification failed, 2 usage or
// configuration error.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hedge_nash/diagnostics.h"
#include "hedge_nash/equilibrium.h"
#include "hedge_nash/extraction.h"
#include "hedge_nash/game.h"
#include "hedge_nash/hedge.h"
#include "hedge_nash/rng.h"
#include "hedge_nash/schedule.h"
#include "hedge_nash/trace_io.h"
#include "json.hpp"

namespace hedge_nash {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr double kInputSimplexTolerance = 1e-6;

// Thrown for bad flags, unreadable inputs and malformed files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> Split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, separator)) parts.push_back(part);
  return parts;
}

double ParseDouble(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw UsageError("not a number: '" + text + "'");
  return value;
}

Vector ParseVector(const std::string& text) {
  std::vector<double> values;
  for (const auto& part : Split(text, ',')) values.push_back(ParseDouble(part));
  if (values.empty()) throw UsageError("empty vector");
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

IndexSet ParseIndexSet(const std::string& text, int n) {
  IndexSet out;
  for (const auto& part : Split(text, ',')) {
    const double v = ParseDouble(part);
    const int i = static_cast<int>(v);
    if (i != v || i < 0 || i >= n) throw UsageError("support index out of range: " + part);
    out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw UsageError("support has a repeated index");
  }
  if (out.empty()) throw UsageError("empty support");
  return out;
}

// Loads `descriptor` (a file path or gen:<kind>:<n>:<seed>) and normalizes payoffs
// to [0, 1]; the units map keeps the original scale.
SymmetricGame LoadNormalizedGame(const std::string& descriptor) {
  if (descriptor.empty()) throw UsageError("--game is required");
  SymmetricGame raw = [&] {
    if (descriptor.rfind("gen:", 0) == 0) {
      const auto parts = Split(descriptor.substr(4), ':');
      if (parts.size() != 3) throw UsageError("generator descriptor is gen:<kind>:<n>:<seed>");
      return GenerateGame(ParseGameKind(parts[0]), static_cast<int>(ParseDouble(parts[1])),
                          static_cast<std::uint64_t>(std::stoull(parts[2])));
    }
    try {
      return LoadGame(descriptor);
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  }();
  return NormalizePayoffs(raw).game;
}

MixedStrategy ParseStrategy(const std::string& text, int n) {
  const Vector x = ParseVector(text);
  if (x.size() != n) {
    throw UsageError("strategy has " + std::to_string(x.size()) + " entries; the game has " +
                     std::to_string(n));
  }
  try {
    return MixedStrategy(x, kInputSimplexTolerance);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("strategy is not on the simplex: ") + e.what());
  }
}

MixedStrategy ParseStart(const std::string& descriptor, int n, std::uint64_t seed) {
  if (descriptor == "uniform") return MixedStrategy::Uniform(n);
  if (descriptor == "random") {
    Rng rng(seed);
    return MixedStrategy(rng.InteriorSimplexPoint(n));
  }
  if (descriptor.rfind("csv:", 0) == 0) {
    MixedStrategy x = ParseStrategy(descriptor.substr(4), n);
    if (!x.interior()) throw UsageError("start strategy must be interior");
    return x;
  }
  throw UsageError("--x0 must be uniform, random or csv:<p1>,<p2>,...");
}

double DefaultTolerance() {
  if (const char* env = std::getenv("HEDGE_NASH_TOL")) {
    const double tol = ParseDouble(env);
    if (!(tol > 0.0)) throw UsageError("HEDGE_NASH_TOL must be positive");
    return tol;
  }
  return kCertificateTolerance;
}

double ResolveTolerance(const std::optional<double>& flag) {
  if (flag) {
    if (!(*flag > 0.0)) throw UsageError("--tol must be positive");
    return *flag;
  }
  return DefaultTolerance();
}

Json VectorJson(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json MatrixJson(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(VectorJson(m.row(i).transpose()));
  return out;
}

void Emit(const Json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------- run

struct RunConfig {
  std::string game;
  std::string schedule = "power:2/3";
  std::string x0 = "uniform";
  std::int64_t steps = 1000;
  std::int64_t emit_every = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::string summary;
  bool force = false;
};

Json ConfigJson(const RunConfig& c) {
  Json doc;
  doc["game"] = c.game;
  doc["schedule"] = c.schedule;
  doc["x0"] = c.x0;
  doc["steps"] = c.steps;
  doc["emit_every"] = c.emit_every;
  doc["seed"] = c.seed;
  doc["out"] = c.out;
  doc["format"] = c.format;
  doc["force"] = c.force;
  return doc;
}

RunConfig ConfigFromJson(const nlohmann::json& doc, const RunConfig& defaults) {
  if (!doc.is_object()) throw UsageError("each run config must be a JSON object");
  RunConfig c = defaults;
  c.game = doc.value("game", c.game);
  c.schedule = doc.value("schedule", c.schedule);
  c.x0 = doc.value("x0", c.x0);
  c.steps = doc.value("steps", c.steps);
  c.emit_every = doc.value("emit_every", c.emit_every);
  c.seed = doc.value("seed", c.seed);
  c.out = doc.value("out", std::string());
  c.format = doc.value("format", c.format);
  c.summary = doc.value("summary", std::string());
  c.force = doc.value("force", c.force);
  return c;
}

Json ExecuteRun(const RunConfig& config) {
  const auto start_time = std::chrono::steady_clock::now();
  const SymmetricGame game = LoadNormalizedGame(config.game);
  LearningRateSchedule schedule = LearningRateSchedule::Default();
  TraceFormat format = TraceFormat::kCsv;
  try {
    schedule = LearningRateSchedule::Parse(config.schedule);
    format = ParseTraceFormat(config.format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (config.steps < 1) throw UsageError("--steps must be at least 1");
  if (config.emit_every < 1) throw UsageError("--emit-every must be at least 1");
  const ScheduleValidation validation = ValidateSchedule(schedule);
  if (!validation.ok() && !config.force) {
    throw UsageError("invalid schedule " + schedule.ToString() + ": " + validation.reason +
                     " (use --force to run anyway)");
  }
  const MixedStrategy start = ParseStart(config.x0, game.n(), config.seed);

  std::ofstream file;
  std::optional<TraceWriter> writer;
  if (!config.out.empty()) {
    file.open(config.out, std::ios::binary);
    if (!file) throw UsageError("cannot write " + config.out);
    writer.emplace(file, format, game.n());
  }
  TraceRecord last;
  double max_gap_average = 0.0;
  TrajectoryOptions options{config.steps, config.emit_every, config.force};
  try {
    RunTrajectory(game, start, schedule, options, [&](const TraceRecord& record) {
      if (writer) writer->Write(record);
      max_gap_average = std::max(max_gap_average, record.gap_average);
      last = record;
    });
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (file.is_open()) {
    file.close();
    if (!file) throw UsageError("failed writing " + config.out);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();

  Json summary;
  summary["config"] = ConfigJson(config);
  summary["n"] = game.n();
  summary["schedule"] = schedule.ToString();
  summary["schedule_validity"] = VerdictName(validation.verdict);
  if (!validation.reason.empty()) summary["schedule_reason"] = validation.reason;
  summary["within_convergence_hypotheses"] =
      validation.verdict == ScheduleValidation::Verdict::kValid;
  summary["final_k"] = last.k;
  summary["A_K"] = last.weight_sum;
  summary["gap_avg"] = last.gap_average;
  summary["gap_iter"] = last.gap_iterate;
  summary["gap_avg_game_units"] = game.units().ToOriginalDifference(last.gap_average);
  summary["max_emitted_gap_avg"] = max_gap_average;
  summary["final_average"] = VectorJson(last.average);
  summary["final_iterate"] = VectorJson(last.iterate);
  summary["avg_step_norm"] = last.average_step_norm;
  summary["wall_time_seconds"] = seconds;
  if (!config.summary.empty()) Emit(summary, config.summary);
  return summary;
}

int RunBatch(const std::string& path, const RunConfig& defaults, int jobs) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config list " + path);
  nlohmann::json list;
  try {
    list = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad config list: ") + e.what());
  }
  if (!list.is_array()) throw UsageError("config list must be a JSON array");
  std::vector<RunConfig> configs;
  for (const auto& entry : list) configs.push_back(ConfigFromJson(entry, defaults));

  std::vector<Json> results(configs.size());
  std::vector<std::string> errors(configs.size());
  std::mutex mutex;
  std::size_t next = 0;
  auto worker = [&] {
    while (true) {
      std::size_t index;
      {
        std::lock_guard<std::mutex> lock(mutex);
        if (next >= configs.size()) return;
        index = next++;
      }
      try {
        results[index] = ExecuteRun(configs[index]);
      } catch (const std::exception& e) {
        errors[index] = e.what();
      }
    }
  };
  std::vector<std::thread> threads;
  const int count = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  for (int t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  Json doc = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (errors[i].empty()) {
      doc.push_back(results[i]);
    } else {
      ok = false;
      Json failure;
      failure["config"] = ConfigJson(configs[i]);
      failure["error"] = errors[i];
      doc.push_back(failure);
    }
  }
  Emit(doc, "");
  return ok ? kExitOk : kExitUsage;
}

// ---------------------------------------------------------------- extract

int ExecuteExtract(const std::string& game_spec, const std::string& trace_path,
                   const std::vector<std::string>& criteria_names, std::optional<std::int64_t> k,
                   double tolerance, const std::string& out) {
  const SymmetricGame game = LoadNormalizedGame(game_spec);
  if (trace_path.empty()) throw UsageError("--trace is required");
  std::ifstream in(trace_path);
  if (!in) throw UsageError("cannot read trace " + trace_path);
  std::vector<TraceRow> rows;
  try {
    rows = ReadTrace(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (rows.empty()) throw UsageError("trace has no rows");
  if (rows.front().iterate.size() != game.n()) {
    throw UsageError("trace dimension does not match the game");
  }
  std::vector<RankingCriterion> criteria;
  try {
    for (const auto& name : criteria_names) criteria.push_back(ParseCriterion(name));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (criteria.empty()) criteria = kDefaultCriteria;

  const TraceRow* row = &rows.back();
  if (k) {
    row = nullptr;
    for (const auto& r : rows) {
      if (r.k == *k) row = &r;
    }
    if (!row) throw UsageError("trace has no row for K = " + std::to_string(*k));
  }
  const TraceRow& first = rows.front();
  const bool uniform = first.k == 0 && (first.iterate.array() == 1.0 / game.n()).all();
  const TraceSnapshot snapshot = TraceSnapshot::FromRow(*row, uniform);
  const ExtractionResult result = ExtractCertificate(game, snapshot, criteria, tolerance);

  Json doc;
  doc["k"] = row->k;
  doc["uniform_start"] = uniform;
  doc["certificate"] = result.certificate ? CertificateToJson(*result.certificate) : Json();
  auto& attempts = doc["attempts"] = Json::array();
  for (const auto& a : result.attempts) {
    Json entry;
    entry["criterion"] = CriterionName(a.criterion);
    entry["order"] = a.order;
    entry["prefix"] = a.prefix;
    entry["detail"] = a.detail;
    attempts.push_back(entry);
  }
  Emit(doc, out);
  return result.certificate ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- verify

int ExecuteVerify(const std::string& game_spec, const std::string& strategy_text,
                  const std::string& support_text, double tolerance, const std::string& out) {
  const SymmetricGame game = LoadNormalizedGame(game_spec);
  if (strategy_text.empty() == support_text.empty()) {
    throw UsageError("give exactly one of --strategy and --support");
  }
  Json doc;
  doc["tolerance"] = tolerance;
  if (!support_text.empty()) {
    const IndexSet support = ParseIndexSet(support_text, game.n());
    const auto cert = VerifySupport(game, support, tolerance);
    doc["support"] = support;
    doc["certificate"] = cert ? CertificateToJson(*cert) : Json();
    doc["verified"] = cert.has_value();
    Emit(doc, out);
    return cert ? kExitOk : kExitFailed;
  }
  const MixedStrategy x = ParseStrategy(strategy_text, game.n());
  const PayoffVector p = ComputePayoffs(game, x);
  const double gap = EpsilonGap(game, x);
  doc["strategy"] = VectorJson(x.probs());
  doc["gap"] = gap;
  doc["game_units_gap"] = game.units().ToOriginalDifference(gap);
  doc["well_supported_eps"] = WellSupportedEpsilon(game, x.probs());
  doc["well_supported"] = IsWellSupported(game, x, tolerance);
  doc["equalizer_spread"] = p.max - p.min;
  doc["support"] = Support(x);
  doc["verified"] = gap <= tolerance;
  Emit(doc, out);
  return gap <= tolerance ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- main

int Main(int argc, char** argv) {
  CLI::App app{"Symmetric Nash equilibria via Hedge with weighted averaging"};
  app.require_subcommand(1);

  RunConfig run;
  std::optional<double> tol;
  std::string out;
  std::string game_spec;
  int jobs = 1;
  std::string config_list;

  auto* run_cmd = app.add_subcommand("run", "run Hedge and write a trace plus summary JSON");
  run_cmd->add_option("--game", run.game, "game file or gen:<kind>:<n>:<seed>");
  run_cmd->add_option("--schedule", run.schedule,
                      "power:<p> | harmonic | constant:<c> | file:<path> | list:<a,b,...>");
  run_cmd->add_option("--x0", run.x0, "uniform | random | csv:<p1,...,pn>");
  run_cmd->add_option("--steps", run.steps, "last step K");
  run_cmd->add_option("--emit-every", run.emit_every, "trace stride");
  run_cmd->add_option("--seed", run.seed, "seed for --x0 random");
  run_cmd->add_option("--out", run.out, "trace output path");
  run_cmd->add_option("--format", run.format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  run_cmd->add_option("--summary", run.summary, "summary JSON path (default stdout)");
  run_cmd->add_flag("--force", run.force, "allow schedules that fail validation");
  run_cmd->add_option("--jobs", jobs, "parallel runs for --config")->check(CLI::PositiveNumber);
  run_cmd->add_option("--config", config_list, "JSON array of run configs");

  std::string trace_path;
  std::vector<std::string> criteria;
  std::optional<std::int64_t> extract_k;
  auto* extract_cmd = app.add_subcommand("extract", "extract a certificate from a trace");
  extract_cmd->add_option("--game", game_spec, "game file or gen:<kind>:<n>:<seed>");
  extract_cmd->add_option("--trace", trace_path, "trace written by run");
  extract_cmd->add_option("--criteria", criteria,
                          "average_payoff, average_mass, iterate_mass (in order)")
      ->delimiter(',');
  extract_cmd->add_option("--k", extract_k, "trace step to use (default: last)");
  extract_cmd->add_option("--tol", tol, "certificate tolerance");
  extract_cmd->add_option("--out", out, "output path (default stdout)");

  std::string strategy_text;
  std::string support_text;
  auto* verify_cmd = app.add_subcommand("verify", "check a strategy or a candidate support");
  verify_cmd->add_option("--game", game_spec, "game file or gen:<kind>:<n>:<seed>");
  verify_cmd->add_option("--strategy", strategy_text, "comma-separated probabilities");
  verify_cmd->add_option("--support", support_text, "comma-separated 0-based indices");
  verify_cmd->add_option("--tol", tol, "epsilon");
  verify_cmd->add_option("--out", out, "output path (default stdout)");

  auto* oracle_cmd = app.add_subcommand("oracle", "support-enumeration equilibria (n <= 6)");
  oracle_cmd->add_option("--game", game_spec, "game file or gen:<kind>:<n>:<seed>");
  oracle_cmd->add_option("--out", out, "output path (default stdout)");

  std::string kind = "random_uniform";
  int gen_n = 4;
  std::uint64_t gen_seed = 0;
  std::string gen_format = "json";
  auto* generate_cmd = app.add_subcommand("generate", "write a generated game");
  generate_cmd->add_option("--kind", kind,
                           "random_uniform | zero_sum_symmetric | doubly_symmetric | coordination");
  generate_cmd->add_option("--n", gen_n, "number of pure strategies");
  generate_cmd->add_option("--seed", gen_seed, "generator seed");
  generate_cmd->add_option("--format", gen_format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));
  generate_cmd->add_option("--out", out, "output path (default stdout)");

  auto* decompose_cmd = app.add_subcommand("decompose", "symmetric + antisymmetric parts");
  decompose_cmd->add_option("--game", game_spec, "game file or gen:<kind>:<n>:<seed>");
  decompose_cmd->add_option("--out", out, "output path (default stdout)");

  std::int64_t samples = 1000;
  std::uint64_t diag_seed = 0;
  std::int64_t trace_steps = 0;
  auto* diagnose_cmd = app.add_subcommand("diagnose", "entropy-inequality diagnostics");
  diagnose_cmd->add_option("--game", game_spec, "game file or gen:<kind>:<n>:<seed>");
  diagnose_cmd->add_option("--samples", samples, "random samples")->check(CLI::NonNegativeNumber);
  diagnose_cmd->add_option("--seed", diag_seed, "sampling seed");
  diagnose_cmd->add_option("--trace-steps", trace_steps,
                           "also check trajectory identities on a uniform-start run of this length")
      ->check(CLI::NonNegativeNumber);
  diagnose_cmd->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      if (!config_list.empty()) return RunBatch(config_list, run, jobs);
      const Json summary = ExecuteRun(run);
      if (run.summary.empty()) Emit(summary, "");
      return kExitOk;
    }
    if (extract_cmd->parsed()) {
      return ExecuteExtract(game_spec, trace_path, criteria, extract_k, ResolveTolerance(tol), out);
    }
    if (verify_cmd->parsed()) {
      return ExecuteVerify(game_spec, strategy_text, support_text, ResolveTolerance(tol), out);
    }
    if (oracle_cmd->parsed()) {
      const SymmetricGame game = LoadNormalizedGame(game_spec);
      if (game.n() > kDefaultEnumerationLimit) {
        throw UsageError("oracle supports n <= " + std::to_string(kDefaultEnumerationLimit));
      }
      Json doc;
      doc["n"] = game.n();
      auto& list = doc["equilibria"] = Json::array();
      for (const auto& cert : EnumerateSymmetricEquilibria(game)) {
        list.push_back(CertificateToJson(cert));
      }
      Emit(doc, out);
      return kExitOk;
    }
    if (generate_cmd->parsed()) {
      const SymmetricGame game = GenerateGame(ParseGameKind(kind), gen_n, gen_seed);
      const std::string text = gen_format == "json" ? GameToJson(game) : GameToText(game);
      if (out.empty() || out == "-") {
        std::cout << text;
      } else {
        std::ofstream file(out);
        if (!file) throw UsageError("cannot write " + out);
        file << text;
      }
      return kExitOk;
    }
    if (decompose_cmd->parsed()) {
      if (game_spec.empty()) throw UsageError("--game is required");
      // Decomposition is reported in the game's own units.
      const SymmetricGame game = game_spec.rfind("gen:", 0) == 0
                                     ? LoadNormalizedGame(game_spec)
                                     : LoadGame(game_spec);
      const Decomposition d = Decompose(game);
      Json doc;
      doc["symmetric"] = MatrixJson(d.symmetric);
      doc["antisymmetric"] = MatrixJson(d.antisymmetric);
      Emit(doc, out);
      return kExitOk;
    }
    if (diagnose_cmd->parsed()) {
      const SymmetricGame game = LoadNormalizedGame(game_spec);
      DiagnosticsReport report = DiagnoseEntropyBounds(game, samples, diag_seed);
      if (trace_steps > 0) {
        const Trace trace = RunTrajectory(game, MixedStrategy::Uniform(game.n()),
                                          LearningRateSchedule::Default(),
                                          TrajectoryOptions{trace_steps, 1, false});
        for (auto& check : DiagnoseTrajectoryIdentities(game, trace).checks) {
          report.checks.push_back(check);
        }
      }
      Json doc = ReportToJson(report);
      doc["vacuous"] = samples == 0;
      Emit(doc, out);
      return report.passed() ? kExitOk : kExitFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace hedge_nash

int main(int argc, char** argv) { return hedge_nash::Main(argc, argv); }
