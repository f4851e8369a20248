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

#pragma once

// The budget-constrained Blotto learner: the path bandit plays allocations,
// Hedge picks the troop or time resource, and the Lagrangian payoff of the
// picked resource is the bandit's reward. When a draw from the fixed action
// set overspends the remaining budget, one last allocation spending exactly
// the remainder is drawn from the reduced graph and the episode ends.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blotto/game_core.hpp"
#include "blotto/hedge_dual.hpp"

namespace blotto {

struct LagrangePayoffs {
  double troop = 0.0;  // r + 1 - (T / B) w, in [1 - c, 2]
  double time = 0.0;   // r, in [0, 1]
};

// Throws InternalError when a payoff leaves its range.
LagrangePayoffs lagrange_payoffs(double reward, std::int64_t consumption,
                                 std::int64_t horizon, std::int64_t budget,
                                 double c);

struct RoundRecord {
  std::int64_t t = 0;
  Allocation learner;
  Allocation adversary;
  double reward = 0.0;
  std::int64_t consumption = 0;
  LagrangePayoffs lagrange;
  std::optional<Resource> dual;       // empty on the fallback round
  std::optional<double> fed_payoff;   // empty on the fallback round
  std::int64_t remaining = 0;         // budget after the round
  bool fallback = false;              // drawn from the reduced action set
  bool terminated = false;

  // Diagnostics of the learning step (zero on the fallback round).
  double max_abs_estimate = 0.0;
  double max_abs_path_estimate = 0.0;
  double max_weight = 0.0;
  double troop_probability = 0.0;
};

struct EpisodeParameters {
  double gamma = 0.0;
  double gamma_raw = 0.0;
  bool gamma_clamped = false;
  double eta = 0.0;
  double epsilon = 0.0;
  double lambda_star = 0.0;
  double log_paths = 0.0;
  int num_edges = 0;
  double estimate_bound = 0.0;  // max(1 + c, 2) n / (gamma lambda*)
  std::uint64_t seed = 0;
  std::string generator;
};

struct EpisodeResult {
  GameConfig config;
  AdversaryModel adversary;
  EpisodeParameters parameters;
  std::vector<RoundRecord> rounds;
  std::int64_t stop_round = 0;
  double total_reward = 0.0;
  std::int64_t total_consumption = 0;
  bool fallback_used = false;
  std::int64_t bound_violations = 0;  // rounds with |lhat^T u| above the bound
  std::int64_t eta_violations = 0;    // rounds with eta |lhat^T u| > 1
  double max_eta_path_estimate = 0.0;
};

EpisodeResult run_episode(const GameConfig& config, const AdversaryModel& adversary,
                          std::uint64_t seed);

// Independent episodes, one per seed, returned in seed order. `jobs` > 1 fans
// the episodes out over worker threads.
std::vector<EpisodeResult> run_batch(const GameConfig& config,
                                     const AdversaryModel& adversary,
                                     std::span<const std::uint64_t> seeds,
                                     unsigned jobs = 1);

}  // namespace blotto
