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

#ifndef HEDGE_NASH_EQUILIBRIUM_H_
#define HEDGE_NASH_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hedge_nash/game.h"
#include "json.hpp"

namespace hedge_nash {

// Gap at or below which a strategy counts as an exact symmetric equilibrium
// (normalized payoff scale).
inline constexpr double kCertificateTolerance = 1e-8;
inline constexpr int kDefaultEnumerationLimit = 6;

struct EquilibriumCertificate {
  MixedStrategy strategy;
  IndexSet support;
  double gap = 0.0;                 // (CX)_max - X.CX
  double well_supported_eps = 0.0;  // smallest eps for which X is eps-well-supported
  std::string method;
  double game_units_gap = 0.0;      // gap in the game's original payoff units
  std::uint64_t game_fingerprint = 0;
};

// (CX)_max - X.CX, clamped at zero against round-off.
double EpsilonGap(const SymmetricGame& game, const Vector& x);
double EpsilonGap(const SymmetricGame& game, const MixedStrategy& x);

// max over supported i of (CX)_max - (CX)_i; 0 for an empty support.
double WellSupportedEpsilon(const SymmetricGame& game, const Vector& x,
                            double support_tolerance = kSupportTolerance);
bool IsWellSupported(const SymmetricGame& game, const MixedStrategy& x, double eps,
                     double support_tolerance = kSupportTolerance);

// Fills in every derived certificate field from the strategy.
EquilibriumCertificate MakeCertificate(const SymmetricGame& game, const MixedStrategy& x,
                                       std::string method);

// Clamps entries in [-1e-10, 0) to zero and renormalizes; throws on larger
// negative mass.
MixedStrategy CleanStrategy(const Vector& x);

// Strategy X with (CX)_i equal for all i, or nullopt if none exists.
std::optional<EquilibriumCertificate> FindEqualizer(const SymmetricGame& game,
                                                    double tolerance = kCertificateTolerance);

struct GapSolution {
  MixedStrategy strategy;
  double gap;
};

// min over X of (CX)_max - (CX)_min.
GapSolution MinEqualizerGap(const SymmetricGame& game);

// min eps s.t. (CX)_i - (CX)_j <= eps for i, j in L; (CX)_i >= (CX)_j for
// i in L, j not in L; X supported on L. nullopt if the dominance
// constraints are infeasible. Throws std::invalid_argument for an empty or
// out-of-range carrier.
std::optional<GapSolution> BestSubequalizer(const SymmetricGame& game, const IndexSet& carrier);

// Certificate for an exact equilibrium supported within `candidate`.
std::optional<EquilibriumCertificate> VerifySupport(const SymmetricGame& game,
                                                    const IndexSet& candidate,
                                                    double tolerance = kCertificateTolerance);

// Brute-force oracle: solves the indifference system on every nonempty
// support, keeps the nonnegative solutions with gap <= 1e-8, deduplicated.
// Throws std::invalid_argument when n > max_n.
std::vector<EquilibriumCertificate> EnumerateSymmetricEquilibria(
    const SymmetricGame& game, int max_n = kDefaultEnumerationLimit);

nlohmann::ordered_json CertificateToJson(const EquilibriumCertificate& certificate);
EquilibriumCertificate CertificateFromJson(const nlohmann::json& doc, const SymmetricGame& game);

}  // namespace hedge_nash

#endif  // HEDGE_NASH_EQUILIBRIUM_H_
