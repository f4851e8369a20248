// Copyright 2026 The blotto-bwk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blotto/episode_io.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "blotto/errors.hpp"

namespace blotto {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void reject_unknown(const json& j, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(path + "." + key, "unknown key");
  }
}

const json& require(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing required field");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path, fmt::format("wrong type ({})", j.type_name()));
  }
}

Allocation allocation_from(const json& j, const std::string& path) {
  return Allocation{get_as<std::vector<int>>(j, path)};
}

json number_or_null(double value) {
  return std::isfinite(value) ? json(value) : json(nullptr);
}

}  // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

json adversary_to_json(const AdversaryModel& model) {
  return std::visit(
      Overloaded{
          [](const FixedAllocation& m) {
            return json{{"type", "fixed"}, {"allocation", m.allocation.troops}};
          },
          [](const Categorical& m) {
            json support = json::array();
            for (const auto& a : m.support) support.push_back(a.troops);
            return json{{"type", "categorical"},
                        {"support", support},
                        {"probabilities", m.probabilities}};
          },
          [](const UniformSum& m) {
            return json{{"type", "uniform_sum"}, {"total", m.total}};
          },
          [](const IndependentBinomial& m) {
            return json{{"type", "binomial"}, {"trials", m.trials}, {"p", m.success}};
          },
      },
      model);
}

AdversaryModel adversary_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const auto type = get_as<std::string>(require(j, path, "type"), path + ".type");
  if (type == "fixed") {
    reject_unknown(j, path, {"type", "allocation"});
    return FixedAllocation{
        allocation_from(require(j, path, "allocation"), path + ".allocation")};
  }
  if (type == "categorical") {
    reject_unknown(j, path, {"type", "support", "probabilities"});
    Categorical m;
    const json& support = require(j, path, "support");
    if (!support.is_array()) throw ConfigError(path + ".support", "expected an array");
    for (std::size_t k = 0; k < support.size(); ++k) {
      m.support.push_back(
          allocation_from(support[k], fmt::format("{}.support[{}]", path, k)));
    }
    m.probabilities = get_as<std::vector<double>>(require(j, path, "probabilities"),
                                                  path + ".probabilities");
    return m;
  }
  if (type == "uniform_sum") {
    reject_unknown(j, path, {"type", "total"});
    return UniformSum{get_as<int>(require(j, path, "total"), path + ".total")};
  }
  if (type == "binomial") {
    reject_unknown(j, path, {"type", "trials", "p"});
    return IndependentBinomial{
        get_as<std::vector<int>>(require(j, path, "trials"), path + ".trials"),
        get_as<std::vector<double>>(require(j, path, "p"), path + ".p")};
  }
  throw ConfigError(path + ".type",
                    "unknown adversary type '" + type +
                        "' (expected fixed, categorical, uniform_sum or binomial)");
}

json config_to_json(const GameConfig& config) {
  return json{{"n", config.n},     {"T", config.T}, {"B", config.B},
              {"c", config.c},     {"m", config.m}, {"weights", config.weights}};
}

json episode_to_json(const EpisodeResult& result) {
  const EpisodeParameters& p = result.parameters;
  json parameters{{"gamma", p.gamma},
                  {"gamma_raw", p.gamma_raw},
                  {"gamma_clamped", p.gamma_clamped},
                  {"eta", p.eta},
                  {"epsilon", p.epsilon},
                  {"lambda_star", p.lambda_star},
                  {"log_paths", p.log_paths},
                  {"num_edges", p.num_edges},
                  {"estimate_bound", number_or_null(p.estimate_bound)},
                  {"seed", p.seed},
                  {"generator", p.generator}};
  json rounds = json::array();
  for (const RoundRecord& r : result.rounds) {
    rounds.push_back(json{
        {"t", r.t},
        {"u", r.learner.troops},
        {"v", r.adversary.troops},
        {"r", r.reward},
        {"w", r.consumption},
        {"L_troop", r.lagrange.troop},
        {"L_time", r.lagrange.time},
        {"dual", r.dual ? to_string(*r.dual) : std::string("none")},
        {"fed_payoff", r.fed_payoff ? json(*r.fed_payoff) : json(nullptr)},
        {"x_after", r.remaining},
        {"fallback", r.fallback},
        {"terminated", r.terminated},
        {"max_abs_estimate", r.max_abs_estimate},
        {"max_abs_path_estimate", r.max_abs_path_estimate},
        {"max_weight", r.max_weight},
        {"troop_probability", r.troop_probability},
    });
  }
  json summary{{"stop_round", result.stop_round},
               {"total_reward", result.total_reward},
               {"total_consumption", result.total_consumption},
               {"fallback_used", result.fallback_used},
               {"bound_violations", result.bound_violations},
               {"eta_violations", result.eta_violations},
               {"max_eta_path_estimate", result.max_eta_path_estimate}};
  return json{{"config", config_to_json(result.config)},
              {"adversary", adversary_to_json(result.adversary)},
              {"parameters", parameters},
              {"rounds", rounds},
              {"summary", summary}};
}

std::string rounds_csv(const EpisodeResult& result) {
  const int n = result.config.n;
  std::string out = "t";
  for (int i = 1; i <= n; ++i) out += fmt::format(",u{}", i);
  for (int i = 1; i <= n; ++i) out += fmt::format(",v{}", i);
  out += ",r,w,L_troop,L_time,dual,fed_payoff,x_after,terminated\n";
  for (const RoundRecord& r : result.rounds) {
    out += std::to_string(r.t);
    for (int u : r.learner.troops) out += fmt::format(",{}", u);
    for (int v : r.adversary.troops) out += fmt::format(",{}", v);
    out += fmt::format(",{},{},{},{},{},{},{},{}\n", format_double(r.reward),
                       r.consumption, format_double(r.lagrange.troop),
                       format_double(r.lagrange.time),
                       r.dual ? to_string(*r.dual) : std::string("none"),
                       r.fed_payoff ? format_double(*r.fed_payoff) : std::string(),
                       r.remaining, r.terminated ? 1 : 0);
  }
  return out;
}

}  // namespace blotto
