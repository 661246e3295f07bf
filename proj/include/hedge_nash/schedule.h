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

#ifndef HEDGE_NASH_SCHEDULE_H_
#define HEDGE_NASH_SCHEDULE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hedge_nash {

// Learning-rate rule k -> alpha_k, k = 0, 1, 2, ...
//
//   power(p):     alpha_k = (k + 1)^-p
//   harmonic:     alpha_0 = 1, alpha_k = 1 / k
//   constant(c):  alpha_k = c
//   custom(list): alpha_k = list[k]
class LearningRateSchedule {
 public:
  enum class Family { kPower, kHarmonic, kConstant, kCustom };

  static LearningRateSchedule Power(double exponent);
  static LearningRateSchedule Harmonic();
  static LearningRateSchedule Constant(double rate);
  static LearningRateSchedule Custom(std::vector<double> rates);
  // power(2/3)
  static LearningRateSchedule Default() { return Power(2.0 / 3.0); }

  // Accepts "power:<p>" (p may be written as a fraction "2/3"), "harmonic",
  // "constant:<c>", "file:<path>" (whitespace separated rates) and
  // "list:<r0>,<r1>,...". Throws std::invalid_argument.
  static LearningRateSchedule Parse(std::string_view descriptor);

  Family family() const { return family_; }
  double parameter() const { return parameter_; }
  const std::vector<double>& rates() const { return rates_; }

  // Throws std::out_of_range past the end of a custom list.
  double Rate(std::int64_t k) const;
  // Number of defined rates; -1 for unbounded families.
  std::int64_t Length() const;

  std::string ToString() const;

 private:
  LearningRateSchedule(Family family, double parameter, std::vector<double> rates)
      : family_(family), parameter_(parameter), rates_(std::move(rates)) {}

  Family family_;
  double parameter_;
  std::vector<double> rates_;
};

struct ScheduleValidation {
  enum class Verdict { kValid, kInvalid, kUnverifiedAsymptotics };
  Verdict verdict;
  std::string reason;

  bool ok() const { return verdict != Verdict::kInvalid; }
};

// Checks alpha_k > 0, alpha_k -> 0, sum alpha_k = inf and
// sum alpha_k (exp(alpha_k) - 1) < inf. Finite custom lists can only be
// checked for positivity.
ScheduleValidation ValidateSchedule(const LearningRateSchedule& schedule);

std::string VerdictName(ScheduleValidation::Verdict verdict);

}  // namespace hedge_nash

#endif  // HEDGE_NASH_SCHEDULE_H_
