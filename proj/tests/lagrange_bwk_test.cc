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


#include "blotto/lagrange_bwk.hpp"

#include <vector>

#include <gtest/gtest.h>

#include "blotto/episode_io.hpp"
#include "blotto/errors.hpp"

namespace blotto {
namespace {

TEST(LagrangePayoffs, Examples) {
  const auto a = lagrange_payoffs(0.5, 2, 4, 4, 2.0);
  EXPECT_NEAR(a.troop, -0.5, 1e-15);
  EXPECT_NEAR(a.time, 0.5, 1e-15);
  const auto idle = lagrange_payoffs(1.0, 0, 10, 5, 2.0);
  EXPECT_NEAR(idle.troop, 2.0, 1e-15);
  // Spending the full cap m = cB/T reaches the lower end 1 - c.
  const auto full = lagrange_payoffs(0.0, 4, 100, 100, 4.0);
  EXPECT_NEAR(full.troop, -3.0, 1e-15);
}

TEST(LagrangePayoffs, ZeroBudget) {
  const auto p = lagrange_payoffs(0.25, 0, 10, 0, 1.0);
  EXPECT_NEAR(p.troop, 1.25, 1e-15);
  EXPECT_THROW(lagrange_payoffs(0.25, 1, 10, 0, 1.0), InternalError);
}

TEST(LagrangePayoffs, RejectsOutOfRange) {
  EXPECT_THROW(lagrange_payoffs(0.0, 5, 100, 100, 4.0), InternalError);
  EXPECT_THROW(lagrange_payoffs(1.5, 0, 100, 100, 4.0), InternalError);
}

TEST(Episode, SmallInstanceRewardBounded) {
  const GameConfig config = GameConfig::make(2, 4, 4, 2.0, {0.5, 0.5});
  ASSERT_EQ(config.m, 2);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto result = run_episode(config, FixedAllocation{Allocation{{0, 0}}}, seed);
    EXPECT_LE(result.total_reward, 3.0 + 1e-12);
    EXPECT_LE(result.total_consumption, 4);
    EXPECT_EQ(result.bound_violations, 0);
    EXPECT_EQ(result.eta_violations, 0);
  }
}

TEST(Episode, BudgetInvariants) {
  const GameConfig config = GameConfig::make(3, 60, 40, 3.0);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto result = run_episode(config, UniformSum{3}, seed);
    std::int64_t remaining = config.B;
    for (std::size_t k = 0; k < result.rounds.size(); ++k) {
      const auto& round = result.rounds[k];
      EXPECT_LE(round.consumption, std::min<std::int64_t>(config.m, remaining));
      if (round.fallback) {
        EXPECT_EQ(round.consumption, remaining);
        EXPECT_EQ(k + 1, result.rounds.size());
        EXPECT_FALSE(round.dual.has_value());
      }
      remaining -= round.consumption;
      EXPECT_EQ(round.remaining, remaining);
    }
    EXPECT_EQ(result.stop_round, static_cast<std::int64_t>(result.rounds.size()));
  }
}

TEST(Episode, ZeroBudgetStopsAtOnce) {
  GameConfig config = GameConfig::make(2, 10, 10, 1.0);
  config.B = 0;
  config.validate();
  const auto result = run_episode(config, UniformSum{1}, 3);
  ASSERT_EQ(result.rounds.size(), 1u);
  EXPECT_TRUE(result.rounds[0].fallback);
  EXPECT_EQ(result.rounds[0].learner, (Allocation{{0, 0}}));
  EXPECT_EQ(result.total_consumption, 0);
}

TEST(Episode, AmpleBudgetRunsFullHorizon) {
  // B = mT: no draw can exceed the remainder.
  const GameConfig config = GameConfig::make(2, 50, 100, 1.0);
  ASSERT_EQ(config.m, 2);
  const auto result = run_episode(config, UniformSum{2}, 9);
  EXPECT_EQ(result.stop_round, 50);
  EXPECT_FALSE(result.fallback_used);
}

TEST(Episode, Deterministic) {
  const GameConfig config = GameConfig::make(3, 80, 80, 2.0);
  const auto a = episode_to_json(run_episode(config, UniformSum{2}, 5)).dump();
  const auto b = episode_to_json(run_episode(config, UniformSum{2}, 5)).dump();
  const auto c = episode_to_json(run_episode(config, UniformSum{2}, 6)).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Episode, BatchMatchesSequentialRuns) {
  const GameConfig config = GameConfig::make(2, 30, 30, 2.0);
  const std::vector<std::uint64_t> seeds{4, 5, 6};
  const auto batch = run_batch(config, UniformSum{2}, seeds, 2);
  ASSERT_EQ(batch.size(), 3u);
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    EXPECT_EQ(episode_to_json(batch[k]).dump(),
              episode_to_json(run_episode(config, UniformSum{2}, seeds[k])).dump());
  }
}

TEST(Episode, LearnsAgainstFixedOpponent) {
  // Against (0,1) with weights (0.75, 0.25) the per-round optimum under a
  // budget of one troop per round is the arm (1,0), worth 0.75.
  const GameConfig config = GameConfig::make(2, 20'000, 20'000, 2.0, {0.75, 0.25});
  const auto result = run_episode(config, FixedAllocation{Allocation{{0, 1}}}, 17);
  ASSERT_GT(result.stop_round, 15'000);
  const std::int64_t half = result.stop_round / 2;
  double early = 0.0, late = 0.0;
  int best_arm_late = 0;
  for (const auto& round : result.rounds) {
    if (round.t <= 2000) early += round.reward;
    if (round.t > half) {
      late += round.reward;
      best_arm_late += round.learner == Allocation{{1, 0}};
    }
  }
  EXPECT_GT(late / static_cast<double>(result.stop_round - half), early / 2000);
  EXPECT_GT(best_arm_late, (result.stop_round - half) / 2);
}

}  // namespace
}  // namespace blotto
