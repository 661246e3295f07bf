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

#include "hedge_nash/schedule.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hedge_nash {
namespace {

double ParseNumber(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return ParseNumber(text.substr(0, slash)) / ParseNumber(text.substr(slash + 1));
  }
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("bad number in schedule: " + std::string(text));
  }
  return value;
}

}  // namespace

LearningRateSchedule LearningRateSchedule::Power(double exponent) {
  if (!std::isfinite(exponent)) throw std::invalid_argument("power exponent must be finite");
  return LearningRateSchedule(Family::kPower, exponent, {});
}

LearningRateSchedule LearningRateSchedule::Harmonic() {
  return LearningRateSchedule(Family::kHarmonic, 0.0, {});
}

LearningRateSchedule LearningRateSchedule::Constant(double rate) {
  if (!std::isfinite(rate)) throw std::invalid_argument("constant rate must be finite");
  return LearningRateSchedule(Family::kConstant, rate, {});
}

LearningRateSchedule LearningRateSchedule::Custom(std::vector<double> rates) {
  if (rates.empty()) throw std::invalid_argument("custom schedule needs at least one rate");
  return LearningRateSchedule(Family::kCustom, 0.0, std::move(rates));
}

LearningRateSchedule LearningRateSchedule::Parse(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  const std::string_view head = descriptor.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : descriptor.substr(colon + 1);
  if (head == "harmonic" && colon == std::string_view::npos) return Harmonic();
  if (head == "power" && !arg.empty()) return Power(ParseNumber(arg));
  if (head == "constant" && !arg.empty()) return Constant(ParseNumber(arg));
  if (head == "list" && !arg.empty()) {
    std::vector<double> rates;
    std::string_view rest = arg;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      rates.push_back(ParseNumber(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return Custom(std::move(rates));
  }
  if (head == "file" && !arg.empty()) {
    std::ifstream in{std::string(arg)};
    if (!in) throw std::invalid_argument("cannot read schedule file: " + std::string(arg));
    std::vector<double> rates;
    std::string token;
    while (in >> token) rates.push_back(ParseNumber(token));
    return Custom(std::move(rates));
  }
  throw std::invalid_argument("unrecognized schedule: " + std::string(descriptor));
}

double LearningRateSchedule::Rate(std::int64_t k) const {
  switch (family_) {
    case Family::kPower:
      return std::pow(static_cast<double>(k + 1), -parameter_);
    case Family::kHarmonic:
      return k == 0 ? 1.0 : 1.0 / static_cast<double>(k);
    case Family::kConstant:
      return parameter_;
    case Family::kCustom:
      if (k < 0 || k >= static_cast<std::int64_t>(rates_.size())) {
        throw std::out_of_range("custom schedule has no rate for step " + std::to_string(k));
      }
      return rates_[static_cast<std::size_t>(k)];
  }
  return 0.0;
}

std::int64_t LearningRateSchedule::Length() const {
  return family_ == Family::kCustom ? static_cast<std::int64_t>(rates_.size()) : -1;
}

std::string LearningRateSchedule::ToString() const {
  std::ostringstream out;
  out.precision(17);
  switch (family_) {
    case Family::kPower: out << "power:" << parameter_; break;
    case Family::kHarmonic: out << "harmonic"; break;
    case Family::kConstant: out << "constant:" << parameter_; break;
    case Family::kCustom:
      out << "list:";
      for (std::size_t k = 0; k < rates_.size(); ++k) out << (k ? "," : "") << rates_[k];
      break;
  }
  return out.str();
}

ScheduleValidation ValidateSchedule(const LearningRateSchedule& schedule) {
  using Verdict = ScheduleValidation::Verdict;
  switch (schedule.family()) {
    case LearningRateSchedule::Family::kPower: {
      const double p = schedule.parameter();
      if (p <= 0.0) return {Verdict::kInvalid, "rates do not tend to 0 (p <= 0)"};
      if (p > 1.0) return {Verdict::kInvalid, "sum of rates converges (p > 1)"};
      if (p <= 0.5) {
        return {Verdict::kInvalid,
                "sum of alpha_k (exp(alpha_k) - 1) diverges (p <= 1/2)"};
      }
      return {Verdict::kValid, ""};
    }
    case LearningRateSchedule::Family::kHarmonic:
      return {Verdict::kValid, ""};
    case LearningRateSchedule::Family::kConstant:
      if (!(schedule.parameter() > 0.0)) return {Verdict::kInvalid, "rates must be positive"};
      return {Verdict::kInvalid, "rates do not tend to 0 (constant schedule)"};
    case LearningRateSchedule::Family::kCustom:
      for (double r : schedule.rates()) {
        if (!(r > 0.0) || !std::isfinite(r)) {
          return {Verdict::kInvalid, "rates must be positive and finite"};
        }
      }
      return {Verdict::kUnverifiedAsymptotics,
              "finite list: only positivity can be checked"};
  }
  return {Verdict::kInvalid, "unknown family"};
}

std::string VerdictName(ScheduleValidation::Verdict verdict) {
  switch (verdict) {
    case ScheduleValidation::Verdict::kValid: return "valid";
    case ScheduleValidation::Verdict::kInvalid: return "invalid";
    case ScheduleValidation::Verdict::kUnverifiedAsymptotics: return "unverified-asymptotics";
  }
  return "unknown";
}

}  // namespace hedge_nash
