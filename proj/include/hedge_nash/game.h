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

#ifndef HEDGE_NASH_GAME_H_
#define HEDGE_NASH_GAME_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hedge_nash {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexSet = std::vector<int>;

// Probability mass at or below this is treated as outside the support.
inline constexpr double kSupportTolerance = 1e-9;
// Simplex membership tolerance for strategies produced by this library.
inline constexpr double kSimplexTolerance = 1e-12;

// Positive-affine payoff map: current = scale * original + offset.
struct AffineMap {
  double scale = 1.0;
  double offset = 0.0;

  double ToOriginalDifference(double current_difference) const {
    return current_difference / scale;
  }
  double ToOriginal(double current) const { return (current - offset) / scale; }
  // this ∘ inner
  AffineMap After(const AffineMap& inner) const {
    return {scale * inner.scale, scale * inner.offset + offset};
  }
};

// A symmetric bimatrix game (C, C^T), described by the row player's payoff
// matrix C. Entry (i, j) is the payoff of pure strategy i against j.
//
// Immutable after construction. The `units` map records how the matrix
// relates to the payoffs the game was originally specified in.
class SymmetricGame {
 public:
  // Throws std::invalid_argument on a non-square matrix, fewer than two
  // strategies, or a non-finite entry.
  explicit SymmetricGame(Matrix payoff, AffineMap units = {});

  int n() const { return static_cast<int>(payoff_.rows()); }
  const Matrix& payoff() const { return payoff_; }
  double operator()(int i, int j) const { return payoff_(i, j); }
  double max_entry() const { return max_entry_; }
  double min_entry() const { return min_entry_; }
  bool nonnegative() const { return min_entry_ >= 0.0; }
  bool normalized() const { return min_entry_ >= 0.0 && max_entry_ <= 1.0; }
  const AffineMap& units() const { return units_; }

  // FNV-1a over the payoff bytes; used to tell games apart.
  std::uint64_t fingerprint() const;

 private:
  Matrix payoff_;
  AffineMap units_;
  double max_entry_;
  double min_entry_;
};

// Point on the probability simplex.
class MixedStrategy {
 public:
  // Throws std::invalid_argument if an entry is negative or non-finite or if
  // the entries do not sum to one within `tolerance`.
  explicit MixedStrategy(Vector probs, double tolerance = kSimplexTolerance);

  static MixedStrategy Uniform(int n);
  static MixedStrategy Pure(int n, int i);

  int n() const { return static_cast<int>(probs_.size()); }
  const Vector& probs() const { return probs_; }
  double operator[](int i) const { return probs_(i); }
  bool interior() const { return (probs_.array() > 0.0).all(); }

 private:
  Vector probs_;
};

// Builds a game from nested rows, rejecting ragged input.
SymmetricGame ValidateGame(const std::vector<std::vector<double>>& rows);

struct NormalizedGame {
  SymmetricGame game;
  double scale;   // a > 0
  double offset;  // b
};

// Maps C to a*C + b*11^T with entries in [0, 1] and max entry exactly 1.
// A constant matrix maps to the all-zero matrix with a = 1, b = -min.
NormalizedGame NormalizePayoffs(const SymmetricGame& game);

struct Decomposition {
  Matrix symmetric;      // (C + C^T) / 2
  Matrix antisymmetric;  // (C - C^T) / 2
};

Decomposition Decompose(const SymmetricGame& game);

// CX together with the summary values derived from it.
struct PayoffVector {
  Vector values;
  double max;
  double min;
  double self_payoff;  // X . CX
};

PayoffVector ComputePayoffs(const SymmetricGame& game, const Vector& x);
PayoffVector ComputePayoffs(const SymmetricGame& game, const MixedStrategy& x);

// Indices with mass strictly above `tolerance`, ascending.
IndexSet Support(const Vector& x, double tolerance = kSupportTolerance);
IndexSet Support(const MixedStrategy& x, double tolerance = kSupportTolerance);

enum class GameKind { kRandomUniform, kZeroSumSymmetric, kDoublySymmetric, kCoordination };

GameKind ParseGameKind(std::string_view name);
std::string GameKindName(GameKind kind);

// Deterministic for a fixed seed. Non-coordination kinds are returned
// normalized; `units` maps back to the raw construction (antisymmetric for
// kZeroSumSymmetric, symmetric for kDoublySymmetric).
SymmetricGame GenerateGame(GameKind kind, int n, std::uint64_t seed);

// Game files: JSON {"n": int, "payoff": [[...], ...]} or plain text (first
// token n, then n*n whitespace separated numbers, row major).
SymmetricGame ParseGame(std::string_view text);
SymmetricGame LoadGame(const std::string& path);
std::string GameToJson(const SymmetricGame& game);
std::string GameToText(const SymmetricGame& game);

}  // namespace hedge_nash

#endif  // HEDGE_NASH_GAME_H_
