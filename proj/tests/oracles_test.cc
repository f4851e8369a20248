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


#include "blotto/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "blotto/errors.hpp"
#include "blotto/rng.hpp"

namespace blotto {
namespace {

const std::vector<double> kHalves{0.5, 0.5};

// Exhaustive recursion over (rounds left, budget left) with memoization.
double brute_force_dp(const ArmTable& table, std::int64_t budget, std::int64_t rounds, int m,
                      std::map<std::pair<std::int64_t, std::int64_t>, double>& memo) {
  if (rounds == 0) return 0.0;
  const auto key = std::make_pair(rounds, budget);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < table.size(); ++a) {
    const std::int64_t w = table.consumption[a];
    if (w > m || w > budget) continue;
    best = std::max(best, table.expected_reward[a] +
                              brute_force_dp(table, budget - w, rounds - 1, m, memo));
  }
  memo[key] = best;
  return best;
}

// min over lambda >= 0 of lambda * rho + max_a (r_a - lambda w_a); the minimum
// sits at zero or at a breakpoint between two arms.
double lagrangian_dual_value(const ArmTable& table, double rho) {
  std::vector<double> candidates{0.0};
  for (std::size_t a = 0; a < table.size(); ++a) {
    for (std::size_t b = 0; b < table.size(); ++b) {
      const double dw = static_cast<double>(table.consumption[a] - table.consumption[b]);
      if (dw > 0) {
        const double lambda = (table.expected_reward[a] - table.expected_reward[b]) / dw;
        if (lambda > 0) candidates.push_back(lambda);
      }
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double lambda : candidates) {
    double inner = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < table.size(); ++a) {
      inner = std::max(inner, table.expected_reward[a] -
                                  lambda * static_cast<double>(table.consumption[a]));
    }
    best = std::min(best, lambda * rho + inner);
  }
  return best;
}

TEST(EnumerateActions, Counts) {
  EXPECT_EQ(enumerate_actions(4, 3).size(), 35u);
  EXPECT_EQ(enumerate_actions(0, 3).size(), 1u);
  EXPECT_EQ(enumerate_actions(1, 2).size(), 3u);
  const auto actions = enumerate_actions(3, 3);
  EXPECT_TRUE(std::is_sorted(actions.begin(), actions.end()));
}

TEST(ExpectedReward, FixedOpponentValues) {
  const auto table = expected_reward_table({Allocation{{1, 1}}, Allocation{{0, 0}},
                                            Allocation{{1, 0}}},
                                           FixedAllocation{Allocation{{0, 0}}}, kHalves);
  EXPECT_NEAR(table.expected_reward[0], 1.0, 1e-15);
  EXPECT_NEAR(table.expected_reward[1], 0.5, 1e-15);
  EXPECT_NEAR(table.expected_reward[2], 0.75, 1e-15);
  EXPECT_EQ(table.consumption[0], 2);
}

TEST(ExpectedReward, ExactMatchesMonteCarlo) {
  const std::vector<double> w{0.2, 0.3, 0.5};
  const AdversaryModel adversary = IndependentBinomial{{2, 3, 1}, {0.4, 0.5, 0.9}};
  const auto exact = expected_reward_table(enumerate_actions(3, 3), adversary, w);
  Rng rng(41);
  const auto mc = expected_reward_table_mc(enumerate_actions(3, 3), adversary, w, 100'000, rng);
  for (std::size_t a = 0; a < exact.size(); ++a) {
    EXPECT_NEAR(exact.expected_reward[a], mc.expected_reward[a], 0.01);
  }
}

TEST(Oracles, PinnedSmallInstance) {
  const auto table = expected_reward_table(enumerate_actions(2, 2),
                                           FixedAllocation{Allocation{{0, 0}}}, kHalves);
  ASSERT_EQ(table.size(), 6u);
  EXPECT_NEAR(opt_dp(table, 4, 4, 2), 3.0, 1e-12);
  const auto lp = opt_lp(table, 4, 4);
  EXPECT_NEAR(4.0 * lp.value, 3.0, 1e-12);
  double mass = 0.0;
  for (const auto& [arm, p] : lp.mixture) mass += p;
  EXPECT_NEAR(mass, 1.0, 1e-15);
}

TEST(Oracles, Regret) {
  EXPECT_EQ(regret(3.0, 3.0), 0.0);
  EXPECT_NEAR(regret(3.0, 2.5), 0.5, 1e-15);
}

TEST(Oracles, DpRoutesAgreeWithBruteForce) {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(2));
    const int m = 1 + static_cast<int>(rng.below(3));
    const std::int64_t horizon = 1 + static_cast<std::int64_t>(rng.below(8));
    const std::int64_t budget = static_cast<std::int64_t>(rng.below(m * horizon + 3));
    std::vector<double> w(n, 1.0 / n);
    const auto table = expected_reward_table(
        enumerate_actions(m, n), UniformSum{static_cast<int>(rng.below(4))}, w);
    std::map<std::pair<std::int64_t, std::int64_t>, double> memo;
    const double brute = brute_force_dp(table, budget, horizon, m, memo);
    EXPECT_NEAR(opt_dp(table, budget, horizon, m), brute, 1e-9);
    EXPECT_NEAR(opt_dp_value_iteration(table, budget, horizon, m), brute, 1e-9);
  }
}

TEST(Oracles, LpMatchesLagrangianDual) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(4));
    const std::int64_t horizon = 1 + static_cast<std::int64_t>(rng.below(20));
    const std::int64_t budget = static_cast<std::int64_t>(rng.below(m * horizon + 1));
    const auto table = expected_reward_table(
        enumerate_actions(m, 3), UniformSum{static_cast<int>(rng.below(5))},
        std::vector<double>{0.5, 0.3, 0.2});
    const double rho = static_cast<double>(budget) / static_cast<double>(horizon);
    EXPECT_NEAR(opt_lp(table, budget, horizon).value, lagrangian_dual_value(table, rho), 1e-12);
  }
}

TEST(Oracles, LpDominatesDp) {
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(3));
    const std::int64_t horizon = 1 + static_cast<std::int64_t>(rng.below(12));
    const std::int64_t budget = static_cast<std::int64_t>(rng.below(m * horizon + 1));
    const auto table = expected_reward_table(enumerate_actions(m, 2),
                                             UniformSum{static_cast<int>(rng.below(4))},
                                             kHalves);
    const double dp = opt_dp(table, budget, horizon, m);
    EXPECT_GE(horizon * opt_lp(table, budget, horizon).value, dp - 1e-9 * std::max(1.0, dp));
  }
}

TEST(Oracles, ClosedFormWithAmpleBudget) {
  const auto table = expected_reward_table(enumerate_actions(2, 2), UniformSum{2}, kHalves);
  const double top = *std::max_element(table.expected_reward.begin(),
                                       table.expected_reward.end());
  EXPECT_NEAR(opt_dp(table, 40, 20, 2), 20.0 * top, 1e-12);
}

TEST(Oracles, Errors) {
  EXPECT_THROW(opt_lp(ArmTable{}, 1, 1), InvalidInput);
  const auto table = expected_reward_table(enumerate_actions(1, 2), UniformSum{1}, kHalves);
  EXPECT_THROW(opt_dp(table, 1, 0, 1), InvalidInput);
  EXPECT_THROW(enumerate_actions(-1, 2), InvalidInput);
}

}  // namespace
}  // namespace blotto
