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

// Exact benchmarks on enumerable instances: the fixed action set, expected
// per-arm rewards against a known adversary law, the LP relaxation value and
// the best dynamic budget-feasible policy.

#include <cstdint>
#include <utility>
#include <vector>

#include "blotto/game_core.hpp"

namespace blotto {

inline constexpr std::uint64_t kMaxArms = 1'000'000;
// Cells of the round-by-round value iteration.
inline constexpr double kMaxDpCells = 1e10;

// All allocations with sum at most m, in lexicographic order. Throws
// SizeLimitExceeded when C(m + n, n) > kMaxArms.
std::vector<Allocation> enumerate_actions(int m, int n);

struct ArmTable {
  std::vector<Allocation> arms;
  std::vector<double> expected_reward;
  std::vector<std::int64_t> consumption;

  std::size_t size() const { return arms.size(); }
};

// Exact: the payoff is a sum over battlefields, so only the adversary's
// per-battlefield marginals matter.
ArmTable expected_reward_table(std::vector<Allocation> actions,
                               const AdversaryModel& adversary,
                               std::span<const double> weights);

// Monte-Carlo estimate from `samples` adversary draws.
ArmTable expected_reward_table_mc(std::vector<Allocation> actions,
                                  const AdversaryModel& adversary,
                                  std::span<const double> weights,
                                  std::int64_t samples, Rng& rng);

struct LpSolution {
  double value = 0.0;  // per round
  std::vector<std::pair<std::size_t, double>> mixture;  // (arm, probability)
};

// max sum X(a) r(a) s.t. sum X(a) w(a) <= B / T, X in the simplex. The optimum
// sits on one arm or a two-arm mixture; only the best arm per consumption
// level can appear in it.
LpSolution opt_lp(const ArmTable& table, std::int64_t budget, std::int64_t horizon);

// Best expected cumulative reward of a dynamic policy that spends at most
// min(m, x) per round. B >= mT and B <= T have closed or knapsack forms; the
// rest uses opt_dp_value_iteration().
double opt_dp(const ArmTable& table, std::int64_t budget, std::int64_t horizon, int m);

// V(t, x) = max over arms a with w(a) <= min(m, x) of r(a) + V(t + 1, x - w(a)).
// Throws SizeLimitExceeded above kMaxDpCells.
double opt_dp_value_iteration(const ArmTable& table, std::int64_t budget,
                              std::int64_t horizon, int m);

// OPT_DP minus the realized cumulative reward.
double regret(double opt_dp_value, double total_reward);

}  // namespace blotto
