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

#include "hedge_nash/game.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hedge_nash/rng.h"
#include "json.hpp"

namespace hedge_nash {

SymmetricGame::SymmetricGame(Matrix payoff, AffineMap units)
    : payoff_(std::move(payoff)), units_(units) {
  if (payoff_.rows() != payoff_.cols()) {
    throw std::invalid_argument("payoff matrix must be square");
  }
  if (payoff_.rows() < 2) {
    throw std::invalid_argument("a game needs at least two pure strategies");
  }
  if (!payoff_.allFinite()) {
    throw std::invalid_argument("payoff matrix has a non-finite entry");
  }
  if (!(units_.scale > 0.0) || !std::isfinite(units_.scale) ||
      !std::isfinite(units_.offset)) {
    throw std::invalid_argument("payoff units map must have a finite positive scale");
  }
  max_entry_ = payoff_.maxCoeff();
  min_entry_ = payoff_.minCoeff();
}

std::uint64_t SymmetricGame::fingerprint() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < size; ++k) {
      hash ^= bytes[k];
      hash *= 0x100000001b3ULL;
    }
  };
  const std::int64_t dim = n();
  mix(&dim, sizeof(dim));
  for (int i = 0; i < n(); ++i) {
    for (int j = 0; j < n(); ++j) {
      const double v = payoff_(i, j) == 0.0 ? 0.0 : payoff_(i, j);  // fold -0
      mix(&v, sizeof(v));
    }
  }
  return hash;
}

MixedStrategy::MixedStrategy(Vector probs, double tolerance) : probs_(std::move(probs)) {
  if (probs_.size() < 1) throw std::invalid_argument("empty strategy");
  if (!probs_.allFinite()) throw std::invalid_argument("strategy has a non-finite entry");
  if ((probs_.array() < 0.0).any()) {
    throw std::invalid_argument("strategy has a negative entry");
  }
  if (std::abs(probs_.sum() - 1.0) > tolerance) {
    std::ostringstream msg;
    msg << "strategy entries sum to " << probs_.sum() << ", not 1";
    throw std::invalid_argument(msg.str());
  }
}

MixedStrategy MixedStrategy::Uniform(int n) {
  return MixedStrategy(Vector::Constant(n, 1.0 / n));
}

MixedStrategy MixedStrategy::Pure(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("pure strategy index out of range");
  return MixedStrategy(Vector::Unit(n, i));
}

SymmetricGame ValidateGame(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix payoff(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      throw std::invalid_argument("payoff matrix must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) payoff(i, j) = rows[i][j];
  }
  return SymmetricGame(std::move(payoff));
}

NormalizedGame NormalizePayoffs(const SymmetricGame& game) {
  const double lo = game.min_entry();
  const double hi = game.max_entry();
  double scale = 1.0;
  double offset = -lo;
  Matrix out;
  if (hi > lo) {
    scale = 1.0 / (hi - lo);
    offset = -lo * scale;
    out = ((game.payoff().array() - lo) * scale).matrix();
    // Pin the extremes so rounding cannot leave the unit interval.
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        if (game(i, j) == hi) out(i, j) = 1.0;
        if (game(i, j) == lo) out(i, j) = 0.0;
      }
    }
  } else {
    out = Matrix::Zero(game.n(), game.n());
  }
  AffineMap step{scale, offset};
  return {SymmetricGame(std::move(out), step.After(game.units())), scale, offset};
}

Decomposition Decompose(const SymmetricGame& game) {
  const Matrix& c = game.payoff();
  return {0.5 * (c + c.transpose()), 0.5 * (c - c.transpose())};
}

PayoffVector ComputePayoffs(const SymmetricGame& game, const Vector& x) {
  if (x.size() != game.n()) {
    throw std::invalid_argument("strategy dimension does not match the game");
  }
  PayoffVector out;
  out.values = game.payoff() * x;
  out.max = out.values.maxCoeff();
  out.min = out.values.minCoeff();
  out.self_payoff = x.dot(out.values);
  return out;
}

PayoffVector ComputePayoffs(const SymmetricGame& game, const MixedStrategy& x) {
  return ComputePayoffs(game, x.probs());
}

IndexSet Support(const Vector& x, double tolerance) {
  IndexSet out;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) > tolerance) out.push_back(static_cast<int>(i));
  }
  return out;
}

IndexSet Support(const MixedStrategy& x, double tolerance) {
  return Support(x.probs(), tolerance);
}

GameKind ParseGameKind(std::string_view name) {
  if (name == "random_uniform") return GameKind::kRandomUniform;
  if (name == "zero_sum_symmetric") return GameKind::kZeroSumSymmetric;
  if (name == "doubly_symmetric") return GameKind::kDoublySymmetric;
  if (name == "coordination") return GameKind::kCoordination;
  throw std::invalid_argument("unknown game kind: " + std::string(name));
}

std::string GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kRandomUniform: return "random_uniform";
    case GameKind::kZeroSumSymmetric: return "zero_sum_symmetric";
    case GameKind::kDoublySymmetric: return "doubly_symmetric";
    case GameKind::kCoordination: return "coordination";
  }
  return "unknown";
}

SymmetricGame GenerateGame(GameKind kind, int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generated games need n >= 2");
  Rng rng(seed);
  Matrix c(n, n);
  switch (kind) {
    case GameKind::kCoordination:
      return SymmetricGame(Matrix::Identity(n, n));
    case GameKind::kRandomUniform:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) c(i, j) = rng.Uniform();
      }
      break;
    case GameKind::kZeroSumSymmetric:
      c.setZero();
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          c(i, j) = rng.Uniform(-1.0, 1.0);
          c(j, i) = -c(i, j);
        }
      }
      break;
    case GameKind::kDoublySymmetric:
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          c(i, j) = rng.Uniform();
          c(j, i) = c(i, j);
        }
      }
      break;
  }
  return NormalizePayoffs(SymmetricGame(std::move(c))).game;
}

namespace {

SymmetricGame ParseJsonGame(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed game JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("payoff") || !doc["payoff"].is_array()) {
    throw std::invalid_argument("game JSON needs a \"payoff\" array");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["payoff"]) {
    if (!row.is_array()) throw std::invalid_argument("payoff rows must be arrays");
    std::vector<double> values;
    for (const auto& v : row) {
      if (!v.is_number()) throw std::invalid_argument("payoff entries must be numbers");
      values.push_back(v.get<double>());
    }
    rows.push_back(std::move(values));
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() ||
        doc["n"].get<std::int64_t>() != static_cast<std::int64_t>(rows.size())) {
      throw std::invalid_argument("\"n\" does not match the payoff matrix");
    }
  }
  return ValidateGame(rows);
}

SymmetricGame ParseTextGame(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0;
  if (!(in >> n) || n < 1) throw std::invalid_argument("text game must start with n");
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (auto& row : rows) {
    for (auto& v : row) {
      std::string token;
      if (!(in >> token)) throw std::invalid_argument("text game has too few entries");
      std::size_t used = 0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad payoff entry: " + token);
      }
      if (used != token.size()) throw std::invalid_argument("bad payoff entry: " + token);
    }
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("text game has trailing entries");
  return ValidateGame(rows);
}

}  // namespace

SymmetricGame ParseGame(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return ParseJsonGame(text);
  return ParseTextGame(text);
}

SymmetricGame LoadGame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read game file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseGame(buffer.str());
}

std::string GameToJson(const SymmetricGame& game) {
  nlohmann::ordered_json doc;
  doc["n"] = game.n();
  auto& rows = doc["payoff"] = nlohmann::ordered_json::array();
  for (int i = 0; i < game.n(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int j = 0; j < game.n(); ++j) row.push_back(game(i, j));
    rows.push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string GameToText(const SymmetricGame& game) {
  std::ostringstream out;
  out.precision(17);
  out << game.n() << "\n";
  for (int i = 0; i < game.n(); ++i) {
    for (int j = 0; j < game.n(); ++j) out << (j ? " " : "") << game(i, j);
    out << "\n";
  }
  return out.str();
}

}  // namespace hedge_nash
