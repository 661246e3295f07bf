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

#ifndef HEDGE_NASH_HEDGE_H_
#define HEDGE_NASH_HEDGE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "hedge_nash/game.h"
#include "hedge_nash/schedule.h"

namespace hedge_nash {

// One application of the Hedge map
//   T_i(X) = X(i) exp(alpha (CX)_i) / sum_j X(j) exp(alpha (CX)_j),
// evaluated as a logit update with max subtraction. X must be interior and
// alpha positive and finite; throws std::invalid_argument otherwise.
MixedStrategy HedgeStep(const SymmetricGame& game, const MixedStrategy& x, double alpha);

// log T(X) from log X. Accepts alpha = 0 (identity) for the diagnostics.
Vector HedgeLogStep(const SymmetricGame& game, const Vector& log_x, double alpha);

// Subtracts log-sum-exp so that exp(result) sums to one.
Vector LogNormalize(const Vector& logits);
Vector Softmax(const Vector& logits);

// RE(P, Q) = sum over the support of P of P(i) ln(P(i) / Q(i)). Throws
// std::invalid_argument when Q(i) = 0 for some i in the support of P.
double RelativeEntropy(const Vector& p, const Vector& q);
// Same, with Q supplied as log probabilities.
double RelativeEntropyFromLog(const Vector& p, const Vector& log_q);

// Weighted empirical average kept as the pair (S, A) with S = sum alpha_k X^k
// and A = sum alpha_k.
class WeightedAverage {
 public:
  explicit WeightedAverage(int n) : sum_(Vector::Zero(n)) {}

  void Add(double weight, const Vector& x) {
    sum_.noalias() += weight * x;
    weight_sum_ += weight;
  }
  double weight_sum() const { return weight_sum_; }
  const Vector& accumulator() const { return sum_; }
  Vector Mean() const { return sum_ / weight_sum_; }

 private:
  Vector sum_;
  double weight_sum_ = 0.0;
};

// Hedge iteration state. Before the k-th call to Advance the state holds X^k
// (as logits, up to a common constant) and the average over X^0..X^{k-1}.
class TrajectoryState {
 public:
  TrajectoryState(const SymmetricGame& game, const MixedStrategy& start);

  // Folds alpha_k X^k into the average, then moves to X^{k+1}.
  void Advance(double alpha);

  std::int64_t step() const { return step_; }
  const Vector& logits() const { return logits_; }
  const Vector& iterate() const { return iterate_; }
  Vector LogIterate() const { return LogNormalize(logits_); }
  const WeightedAverage& average() const { return average_; }
  // sum_k alpha_k X^k . C X^k over the folded steps.
  double weighted_self_payoff() const { return weighted_self_payoff_; }
  // C X^k computed by the last Advance.
  const Vector& last_payoffs() const { return payoffs_; }

 private:
  const SymmetricGame* game_;
  Vector logits_;
  Vector iterate_;
  Vector payoffs_;
  WeightedAverage average_;
  double weighted_self_payoff_ = 0.0;
  std::int64_t step_ = 0;
};

// Snapshot of a run at step K.
struct TraceRecord {
  std::int64_t k = 0;
  double alpha = 0.0;        // alpha_K
  double weight_sum = 0.0;   // A_K = alpha_0 + ... + alpha_K
  Vector iterate;            // X^K
  Vector average;            // Xbar^K
  Vector next_log_iterate;   // ln X^{K+1}
  double weighted_self_payoff = 0.0;  // sum_{k<=K} alpha_k X^k . C X^k
  double gap_average = 0.0;  // epsilon gap of Xbar^K
  double gap_iterate = 0.0;  // epsilon gap of X^K
  double average_step_norm = 0.0;  // ||Xbar^K - Xbar^{K-1}||_2, 0 at K = 0
};

struct TrajectoryOptions {
  std::int64_t max_step = 1000;  // last recorded K
  std::int64_t emit_every = 1;   // K = 0, stride, 2 stride, ... and max_step
  bool force = false;            // allow schedules that fail validation
};

struct Trace {
  MixedStrategy start;
  std::vector<TraceRecord> records;

  bool uniform_start() const;
};

using TraceObserver = std::function<void(const TraceRecord&)>;

// Runs Hedge from an interior start with weighted averaging, calling
// `observer` for each emitted step. Deterministic. Throws
// std::invalid_argument for a non-interior start, an invalid schedule
// without `force`, or a custom schedule shorter than max_step + 1.
void RunTrajectory(const SymmetricGame& game, const MixedStrategy& start,
                   const LearningRateSchedule& schedule, const TrajectoryOptions& options,
                   const TraceObserver& observer);

Trace RunTrajectory(const SymmetricGame& game, const MixedStrategy& start,
                    const LearningRateSchedule& schedule, const TrajectoryOptions& options);

}  // namespace hedge_nash

#endif  // HEDGE_NASH_HEDGE_H_
