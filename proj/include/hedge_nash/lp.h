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

#ifndef HEDGE_NASH_LP_H_
#define HEDGE_NASH_LP_H_

#include <string>

#include "hedge_nash/game.h"

namespace hedge_nash {

enum class LPSense { kMinimize, kMaximize, kFeasibility };
enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

std::string LPStatusName(LPStatus status);

// optimize d.y subject to A y = b, y >= 0.
struct StandardFormLP {
  Matrix constraints;  // A, r x c
  Vector rhs;          // b, length r
  Vector objective;    // d, length c (ignored for kFeasibility)
  LPSense sense = LPSense::kFeasibility;
};

struct LPResult {
  LPStatus status = LPStatus::kInfeasible;
  Vector solution;  // set when optimal
  double objective_value = 0.0;
};

inline constexpr double kPivotTolerance = 1e-9;
inline constexpr double kLPResidualTolerance = 1e-8;
inline constexpr double kLPNegativityTolerance = 1e-10;

// Dense two-phase tableau simplex with Bland's rule.
//
// Every optimal result is checked against A y = b (within
// kLPResidualTolerance relative to the row scale) and y >= 0 before it is
// returned; a result that fails the check throws std::runtime_error.
// Throws std::invalid_argument on inconsistent dimensions or non-finite data.
LPResult SolveLP(const StandardFormLP& lp);

// Feasibility program whose solutions [X; c] are the equalizers of the game:
//   C X - c 1 = 0,  1^T X = 1,  X >= 0, c >= 0.
// Requires a nonnegative game; if any entry is zero the whole matrix is
// shifted by +1 first, which leaves the equalizer set unchanged.
StandardFormLP AssembleEqualizerLP(const SymmetricGame& game);

}  // namespace hedge_nash

#endif  // HEDGE_NASH_LP_H_
