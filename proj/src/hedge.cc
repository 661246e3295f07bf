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

#include "hedge_nash/hedge.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hedge_nash/equilibrium.h"

namespace hedge_nash {

Vector LogNormalize(const Vector& logits) {
  const double top = logits.maxCoeff();
  const double log_sum = std::log((logits.array() - top).exp().sum());
  return (logits.array() - top - log_sum).matrix();
}

Vector Softmax(const Vector& logits) {
  const Vector e = (logits.array() - logits.maxCoeff()).exp().matrix();
  return e / e.sum();
}

Vector HedgeLogStep(const SymmetricGame& game, const Vector& log_x, double alpha) {
  const Vector x = log_x.array().exp().matrix();
  return LogNormalize(log_x + alpha * (game.payoff() * x));
}

MixedStrategy HedgeStep(const SymmetricGame& game, const MixedStrategy& x, double alpha) {
  if (x.n() != game.n()) throw std::invalid_argument("strategy dimension does not match the game");
  if (!x.interior()) throw std::invalid_argument("Hedge step needs an interior strategy");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("learning rate must be positive and finite");
  }
  const Vector logits = x.probs().array().log().matrix() + alpha * (game.payoff() * x.probs());
  return MixedStrategy(Softmax(logits));
}

double RelativeEntropy(const Vector& p, const Vector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("relative entropy: size mismatch");
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= 0.0) continue;
    if (q(i) <= 0.0) {
      throw std::invalid_argument("relative entropy: support of P not contained in Q");
    }
    total += p(i) * std::log(p(i) / q(i));
  }
  return total;
}

double RelativeEntropyFromLog(const Vector& p, const Vector& log_q) {
  if (p.size() != log_q.size()) throw std::invalid_argument("relative entropy: size mismatch");
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= 0.0) continue;
    if (!std::isfinite(log_q(i))) {
      throw std::invalid_argument("relative entropy: support of P not contained in Q");
    }
    total += p(i) * (std::log(p(i)) - log_q(i));
  }
  return total;
}

TrajectoryState::TrajectoryState(const SymmetricGame& game, const MixedStrategy& start)
    : game_(&game), average_(game.n()) {
  if (start.n() != game.n()) {
    throw std::invalid_argument("start strategy dimension does not match the game");
  }
  if (!start.interior()) throw std::invalid_argument("trajectory needs an interior start");
  logits_ = start.probs().array().log().matrix();
  logits_.array() -= logits_.maxCoeff();
  iterate_ = Softmax(logits_);
}

void TrajectoryState::Advance(double alpha) {
  payoffs_.noalias() = game_->payoff() * iterate_;
  average_.Add(alpha, iterate_);
  weighted_self_payoff_ += alpha * iterate_.dot(payoffs_);
  logits_.noalias() += alpha * payoffs_;
  logits_.array() -= logits_.maxCoeff();
  const Vector e = logits_.array().exp().matrix();
  iterate_ = e / e.sum();
  ++step_;
}

bool Trace::uniform_start() const {
  const double u = 1.0 / start.n();
  return (start.probs().array() == u).all();
}

void RunTrajectory(const SymmetricGame& game, const MixedStrategy& start,
                   const LearningRateSchedule& schedule, const TrajectoryOptions& options,
                   const TraceObserver& observer) {
  if (options.max_step < 0) throw std::invalid_argument("max_step must be nonnegative");
  if (options.emit_every < 1) throw std::invalid_argument("emit_every must be at least 1");
  const ScheduleValidation validation = ValidateSchedule(schedule);
  if (!validation.ok() && !options.force) {
    throw std::invalid_argument("invalid schedule " + schedule.ToString() + ": " +
                                validation.reason);
  }
  if (schedule.Length() >= 0 && schedule.Length() < options.max_step + 1) {
    throw std::invalid_argument("custom schedule has " + std::to_string(schedule.Length()) +
                                " rates; the run needs " + std::to_string(options.max_step + 1));
  }
  TrajectoryState state(game, start);
  Vector previous_average;
  for (std::int64_t k = 0; k <= options.max_step; ++k) {
    const double alpha = schedule.Rate(k);
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw std::invalid_argument("learning rate at step " + std::to_string(k) +
                                  " is not positive");
    }
    const bool emit = k % options.emit_every == 0 || k == options.max_step;
    const bool emit_next = (k + 1) % options.emit_every == 0 || k + 1 == options.max_step;
    Vector iterate;
    if (emit) iterate = state.iterate();
    state.Advance(alpha);
    if (emit) {
      TraceRecord record;
      record.k = k;
      record.alpha = alpha;
      record.weight_sum = state.average().weight_sum();
      record.iterate = std::move(iterate);
      record.average = state.average().Mean();
      record.next_log_iterate = state.LogIterate();
      record.weighted_self_payoff = state.weighted_self_payoff();
      record.gap_average = EpsilonGap(game, record.average);
      record.gap_iterate = EpsilonGap(game, record.iterate);
      record.average_step_norm =
          k == 0 ? 0.0 : (record.average - previous_average).norm();
      observer(record);
    }
    if (emit_next) previous_average = state.average().Mean();
  }
}

Trace RunTrajectory(const SymmetricGame& game, const MixedStrategy& start,
                    const LearningRateSchedule& schedule, const TrajectoryOptions& options) {
  Trace trace{start, {}};
  RunTrajectory(game, start, schedule, options,
                [&trace](const TraceRecord& record) { trace.records.push_back(record); });
  return trace;
}

}  // namespace hedge_nash
