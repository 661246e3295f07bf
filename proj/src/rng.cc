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

#include "hedge_nash/rng.h"

#include <cmath>
#include <stdexcept>

namespace hedge_nash {
namespace {

inline std::uint64_t Rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  for (auto& word : state_) word = SplitMix64(seed);
}

std::uint64_t Rng::Next() {
  const std::uint64_t result = Rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = Rotl(state_[3], 45);
  return result;
}

double Rng::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

double Rng::UniformOpen() {
  return (static_cast<double>(Next() >> 11) + 0.5) * 0x1.0p-53;
}

int Rng::Below(int bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::Below: bound must be positive");
  // Lemire's multiply-shift; the bias is below 2^-32 for our bounds.
  const auto hi = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(Next()) * static_cast<unsigned>(bound)) >> 64);
  return static_cast<int>(hi);
}

Vector Rng::InteriorSimplexPoint(int n) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = -std::log(UniformOpen());
  return x / x.sum();
}

}  // namespace hedge_nash
