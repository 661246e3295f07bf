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

#ifndef HEDGE_NASH_DIAGNOSTICS_H_
#define HEDGE_NASH_DIAGNOSTICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hedge_nash/game.h"
#include "hedge_nash/hedge.h"
#include "json.hpp"

namespace hedge_nash {

inline constexpr double kPointwiseBoundTolerance = 1e-9;
inline constexpr double kAccumulatedBoundTolerance = 1e-8;

struct DiagnosticCheck {
  std::string name;
  std::int64_t samples = 0;
  double max_violation = 0.0;  // max over samples of max(0, lhs - rhs)
  double tolerance = 0.0;
  bool passed() const { return max_violation <= tolerance; }
  bool vacuous() const { return samples == 0; }
  void Record(double violation) {
    ++samples;
    if (violation > max_violation) max_violation = violation;
  }
};

struct DiagnosticsReport {
  std::vector<DiagnosticCheck> checks;

  bool passed() const;
  const DiagnosticCheck& Find(const std::string& name) const;
};

nlohmann::ordered_json ReportToJson(const DiagnosticsReport& report);

// Relative-entropy quantities at one (X, Y, alpha) point.
struct EntropyBoundTerms {
  double re_after;   // RE(Y, T(X))
  double re_before;  // RE(Y, X)
  double drift;      // alpha (Y - X) . CX
  double upper_violation() const;  // vs RE(Y,X) - drift + alpha (e^alpha - 1)
  double lower_violation() const;  // vs RE(Y,X) - drift
  double alpha;
};

EntropyBoundTerms EvaluateEntropyBounds(const SymmetricGame& game, const Vector& log_x,
                                        const Vector& y, double alpha);

// Samples random interior X, random Y (interior, faces and vertices) and
// learning rates on {0, 0.25, 0.5, 1, 2} plus ten uniform draws from [0, 2].
// Checks:
//   "convexity":  midpoint convexity of alpha -> RE(Y, T_alpha(X))
//   "upper_bound": RE(Y,T(X)) <= RE(Y,X) - alpha (Y-X).CX + alpha (e^alpha - 1)
//   "lower_bound": RE(Y,T(X)) >= RE(Y,X) - alpha (Y-X).CX
//   "log_mass_bound": along a short run from a random start,
//       (ln X^{K+1}(i) - ln X^0(i)) / A_K <= (C Xbar^K)_i - (1/A_K) sum alpha_k X^k.CX^k
// The game must be normalized (entries in [0, 1]).
DiagnosticsReport DiagnoseEntropyBounds(const SymmetricGame& game, std::int64_t samples,
                                        std::uint64_t seed);

struct TrajectoryIdentityOptions {
  bool sign_identity = true;     // requires a uniform start
  bool lower_payoff_bound = true;
  bool best_response_bound = true;
  double tolerance = kAccumulatedBoundTolerance;
};

// Checks over every record of `trace`:
//   "sign_identity":  ln(X^{K+1}(i) / X^{K+1}(j)) / A_K = (C Xbar^K)_i - (C Xbar^K)_j
//   "payoff_lower_bound": (C Xbar^K)_i - (C Xbar^K)_max
//       >= (ln c + ln X^{K+1}(i)) / A_K, c = X^0(min) / X^0(max)
//   "best_response_bound": X^{K+1} . C Xbar^K - (1/A_K) sum alpha_k X^k.CX^k >= 0
// Throws std::invalid_argument when the sign identity is requested for a
// non-uniform start.
DiagnosticsReport DiagnoseTrajectoryIdentities(const SymmetricGame& game, const Trace& trace,
                                               const TrajectoryIdentityOptions& options = {});

}  // namespace hedge_nash

#endif  // HEDGE_NASH_DIAGNOSTICS_H_
