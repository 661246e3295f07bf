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

#ifndef HEDGE_NASH_RNG_H_
#define HEDGE_NASH_RNG_H_

#include <array>
#include <cstdint>

#include "hedge_nash/game.h"

namespace hedge_nash {

// xoshiro256** 1.0 (Blackman & Vigna), state seeded from a single 64-bit
// value through splitmix64. Both algorithms are fixed so that seeded runs
// reproduce across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t Next();
  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform();
  // Uniform on the open interval (0, 1).
  double UniformOpen();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, bound).
  int Below(int bound);

  // Flat Dirichlet sample; every entry is strictly positive.
  Vector InteriorSimplexPoint(int n);

 private:
  std::array<std::uint64_t, 4> state_;
};

std::uint64_t SplitMix64(std::uint64_t& state);

}  // namespace hedge_nash

#endif  // HEDGE_NASH_RNG_H_
