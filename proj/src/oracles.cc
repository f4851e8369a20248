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

#include <fmt/format.h>

#include "blotto/errors.hpp"

namespace blotto {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// best[k] = max expected reward over arms consuming exactly k, or -inf.
std::vector<double> best_per_level(const ArmTable& table, int top) {
  std::vector<double> best(top + 1, kNegInf);
  for (std::size_t a = 0; a < table.size(); ++a) {
    const std::int64_t k = table.consumption[a];
    if (k >= 0 && k <= top) best[k] = std::max(best[k], table.expected_reward[a]);
  }
  return best;
}

std::size_t arm_at_level(const ArmTable& table, std::int64_t k, double value) {
  for (std::size_t a = 0; a < table.size(); ++a) {
    if (table.consumption[a] == k && table.expected_reward[a] == value) return a;
  }
  throw InternalError("no arm attains the level optimum");
}

ArmTable empty_table(std::vector<Allocation> actions) {
  ArmTable table;
  table.consumption.reserve(actions.size());
  for (const auto& a : actions) table.consumption.push_back(a.total());
  table.arms = std::move(actions);
  table.expected_reward.assign(table.arms.size(), 0.0);
  return table;
}

}  // namespace

std::vector<Allocation> enumerate_actions(int m, int n) {
  if (m < 0 || n < 1) throw InvalidInput("enumerate_actions needs m >= 0, n >= 1");
  double count = 1.0;
  for (int i = 1; i <= n; ++i) count = count * (m + i) / i;
  if (count > static_cast<double>(kMaxArms)) {
    throw SizeLimitExceeded(fmt::format(
        "action set of C({}, {}) = {:.0f} arms exceeds {}", m + n, n, count, kMaxArms));
  }
  std::vector<Allocation> out;
  out.reserve(static_cast<std::size_t>(std::llround(count)));
  Allocation current;
  current.troops.assign(n, 0);
  auto fill = [&](auto&& self, int position, int left) -> void {
    if (position == n) {
      out.push_back(current);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      current.troops[position] = k;
      self(self, position + 1, left - k);
    }
    current.troops[position] = 0;
  };
  fill(fill, 0, m);
  return out;
}

ArmTable expected_reward_table(std::vector<Allocation> actions,
                               const AdversaryModel& adversary,
                               std::span<const double> weights) {
  const int n = static_cast<int>(weights.size());
  validate_adversary(adversary, n);
  // below[i][k] = P(v_i < k) + P(v_i = k) / 2.
  std::vector<std::vector<double>> score(n);
  int top = 0;
  for (const auto& a : actions) {
    for (int troops : a.troops) top = std::max(top, troops);
  }
  for (int i = 0; i < n; ++i) {
    const std::vector<double> marginal = adversary_marginal(adversary, n, i);
    score[i].assign(top + 1, 0.0);
    double below = 0.0;
    for (int k = 0; k <= top; ++k) {
      const double equal = k < static_cast<int>(marginal.size()) ? marginal[k] : 0.0;
      score[i][k] = below + 0.5 * equal;
      below += equal;
    }
  }
  ArmTable table = empty_table(std::move(actions));
  for (std::size_t a = 0; a < table.size(); ++a) {
    const Allocation& arm = table.arms[a];
    if (arm.size() != n) throw InvalidInput("action length differs from weights");
    double r = 0.0;
    for (int i = 0; i < n; ++i) r += weights[i] * score[i][arm.troops[i]];
    table.expected_reward[a] = r;
  }
  return table;
}

ArmTable expected_reward_table_mc(std::vector<Allocation> actions,
                                  const AdversaryModel& adversary,
                                  std::span<const double> weights,
                                  std::int64_t samples, Rng& rng) {
  if (samples < 1) throw InvalidInput("Monte-Carlo needs at least one sample");
  const int n = static_cast<int>(weights.size());
  validate_adversary(adversary, n);
  ArmTable table = empty_table(std::move(actions));
  for (std::int64_t s = 0; s < samples; ++s) {
    const Allocation v = sample_adversary(adversary, n, rng);
    for (std::size_t a = 0; a < table.size(); ++a) {
      table.expected_reward[a] += payoff(table.arms[a], v, weights);
    }
  }
  for (double& r : table.expected_reward) r /= static_cast<double>(samples);
  return table;
}

LpSolution opt_lp(const ArmTable& table, std::int64_t budget, std::int64_t horizon) {
  if (horizon < 1) throw InvalidInput("horizon must be positive");
  if (table.size() == 0) throw InvalidInput("empty arm table");
  const double per_round = static_cast<double>(budget) / static_cast<double>(horizon);
  std::int64_t top = 0;
  for (std::int64_t k : table.consumption) top = std::max(top, k);
  const std::vector<double> best = best_per_level(table, static_cast<int>(top));

  LpSolution solution;
  solution.value = kNegInf;
  for (int k = 0; k <= top; ++k) {
    if (best[k] == kNegInf || k > per_round) continue;
    if (best[k] > solution.value) {
      solution.value = best[k];
      solution.mixture = {{arm_at_level(table, k, best[k]), 1.0}};
    }
  }
  // Two-level mixtures with the budget constraint tight.
  for (int lo = 0; lo <= top; ++lo) {
    if (best[lo] == kNegInf || lo >= per_round) continue;
    for (int hi = lo + 1; hi <= top; ++hi) {
      if (best[hi] == kNegInf || hi <= per_round) continue;
      const double theta = (hi - per_round) / static_cast<double>(hi - lo);
      const double value = theta * best[lo] + (1.0 - theta) * best[hi];
      if (value > solution.value) {
        solution.value = value;
        solution.mixture = {{arm_at_level(table, lo, best[lo]), theta},
                            {arm_at_level(table, hi, best[hi]), 1.0 - theta}};
      }
    }
  }
  if (solution.value == kNegInf) {
    throw InvalidInput("no arm fits the per-round budget");
  }
  return solution;
}

double opt_dp_value_iteration(const ArmTable& table, std::int64_t budget,
                              std::int64_t horizon, int m) {
  if (horizon < 1 || budget < 0 || m < 0) throw InvalidInput("bad DP arguments");
  const std::vector<double> best = best_per_level(table, m);
  // Budget beyond m * T can never be spent.
  const std::int64_t cap = std::min<std::int64_t>(budget, static_cast<std::int64_t>(m) * horizon);
  const double cells = static_cast<double>(m + 1) * static_cast<double>(cap + 1) *
                       static_cast<double>(horizon);
  if (cells > kMaxDpCells) {
    throw SizeLimitExceeded(fmt::format("value iteration needs {:.3e} cells", cells));
  }
  std::vector<double> next(cap + 1, 0.0);
  std::vector<double> current(cap + 1, 0.0);
  for (std::int64_t t = horizon; t >= 1; --t) {
    for (std::int64_t x = 0; x <= cap; ++x) {
      double value = kNegInf;
      const std::int64_t spend_max = std::min<std::int64_t>(m, x);
      for (std::int64_t k = 0; k <= spend_max; ++k) {
        if (best[k] == kNegInf) continue;
        value = std::max(value, best[k] + next[x - k]);
      }
      current[x] = value;
    }
    std::swap(current, next);
  }
  if (next[cap] == kNegInf) throw InvalidInput("no feasible policy");
  return next[cap];
}

double opt_dp(const ArmTable& table, std::int64_t budget, std::int64_t horizon, int m) {
  if (horizon < 1 || budget < 0 || m < 0) throw InvalidInput("bad DP arguments");
  const std::vector<double> best = best_per_level(table, m);
  if (budget >= static_cast<std::int64_t>(m) * horizon) {
    const double top = *std::max_element(best.begin(), best.end());
    if (top == kNegInf) throw InvalidInput("no feasible policy");
    return static_cast<double>(horizon) * top;
  }
  if (budget <= horizon && best[0] != kNegInf) {
    // Every nonzero level costs at least one troop, so at most B <= T rounds
    // spend anything: an unbounded knapsack over gains against the zero arm.
    std::vector<double> gain(budget + 1, 0.0);
    for (std::int64_t b = 1; b <= budget; ++b) {
      double value = gain[b - 1];
      for (int k = 1; k <= std::min<std::int64_t>(m, b); ++k) {
        if (best[k] == kNegInf || best[k] <= best[0]) continue;
        value = std::max(value, gain[b - k] + best[k] - best[0]);
      }
      gain[b] = value;
    }
    return static_cast<double>(horizon) * best[0] + gain[budget];
  }
  return opt_dp_value_iteration(table, budget, horizon, m);
}

double regret(double opt_dp_value, double total_reward) {
  return opt_dp_value - total_reward;
}

}  // namespace blotto
