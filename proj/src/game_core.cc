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

#include "blotto/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "blotto/errors.hpp"

namespace blotto {

namespace {

constexpr double kWeightSumTolerance = 1e-12;
constexpr double kProbabilitySumTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

void check_allocation(const Allocation& a, int n, const std::string& what) {
  if (a.size() != n) {
    throw InvalidInput(fmt::format("{} has {} entries, expected {}", what,
                                   a.size(), n));
  }
  for (int troops : a.troops) {
    if (troops < 0) throw InvalidInput(what + " has a negative entry");
  }
}

}  // namespace

std::int64_t Allocation::total() const {
  return std::accumulate(troops.begin(), troops.end(), std::int64_t{0});
}

std::string to_string(const Allocation& a) {
  return fmt::format("({})", fmt::join(a.troops, ","));
}

int per_round_cap(std::int64_t T, std::int64_t B, double c) {
  if (T <= 0) throw InvalidInput("horizon T must be positive");
  // The epsilon absorbs representation error, e.g. c = 0.3 with B/T = 10.
  const double cap = std::floor(c * static_cast<double>(B) /
                                    static_cast<double>(T) +
                                1e-9);
  return static_cast<int>(cap);
}

GameConfig GameConfig::make(int n, std::int64_t T, std::int64_t B, double c,
                            std::vector<double> weights) {
  GameConfig config;
  config.n = n;
  config.T = T;
  config.B = B;
  config.c = c;
  if (n <= 0) throw InvalidInput("battlefield count n must be positive");
  config.m = per_round_cap(T, B, c);
  if (weights.empty()) weights.assign(n, 1.0 / n);
  config.weights = std::move(weights);
  config.validate();
  return config;
}

void GameConfig::validate() const {
  if (n < 2) throw InvalidInput("battlefield count n must be at least 2");
  if (T <= 0) throw InvalidInput("horizon T must be positive");
  if (B < 0) throw InvalidInput("budget B must be nonnegative");
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidInput("cap multiplier c must be positive");
  }
  if (m < 1) {
    throw InvalidInput(
        fmt::format("per-round cap m = floor(cB/T) = {} must be at least 1", m));
  }
  if (B > 0 && m > per_round_cap(T, B, c)) {
    throw InvalidInput(fmt::format("per-round cap m = {} exceeds floor(cB/T) = {}", m,
                                   per_round_cap(T, B, c)));
  }
  if (static_cast<int>(weights.size()) != n) {
    throw InvalidInput(fmt::format("weights has {} entries, expected n = {}",
                                   weights.size(), n));
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidInput("battlefield weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw InvalidInput(fmt::format("weights sum to {:.17g}, expected 1", sum));
  }
}

double payoff(std::span<const int> u, std::span<const int> v,
              std::span<const double> weights) {
  if (u.size() != v.size() || u.size() != weights.size()) {
    throw InvalidInput(fmt::format(
        "payoff dimension mismatch: |u| = {}, |v| = {}, |b| = {}", u.size(),
        v.size(), weights.size()));
  }
  double reward = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > v[i]) {
      reward += weights[i];
    } else if (u[i] == v[i]) {
      reward += 0.5 * weights[i];
    }
  }
  return reward;
}

double payoff(const Allocation& u, const Allocation& v,
              std::span<const double> weights) {
  return payoff(std::span<const int>(u.troops), std::span<const int>(v.troops),
                weights);
}

BudgetState step_state(const BudgetState& state, const Allocation& u) {
  const std::int64_t spend = u.total();
  if (spend < 0) throw InvalidInput("allocation has negative total");
  if (spend > state.x) {
    throw BudgetViolation(fmt::format(
        "round {} spends {} with only {} remaining", state.t, spend, state.x));
  }
  return BudgetState{state.x - spend, state.t + 1};
}

void validate_adversary(const AdversaryModel& model, int n) {
  std::visit(
      Overloaded{
          [n](const FixedAllocation& m) {
            check_allocation(m.allocation, n, "fixed adversary allocation");
          },
          [n](const Categorical& m) {
            if (m.support.empty()) {
              throw InvalidInput("categorical adversary has empty support");
            }
            if (m.support.size() != m.probabilities.size()) {
              throw InvalidInput(
                  "categorical adversary support and probabilities differ in "
                  "length");
            }
            double sum = 0.0;
            for (std::size_t k = 0; k < m.support.size(); ++k) {
              check_allocation(m.support[k], n,
                               fmt::format("categorical support[{}]", k));
              if (!(m.probabilities[k] >= 0.0)) {
                throw InvalidInput("categorical probabilities must be >= 0");
              }
              sum += m.probabilities[k];
            }
            if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
              throw InvalidInput(fmt::format(
                  "categorical probabilities sum to {:.17g}, expected 1", sum));
            }
          },
          [](const UniformSum& m) {
            if (m.total < 0) {
              throw InvalidInput("uniform-sum adversary total must be >= 0");
            }
          },
          [n](const IndependentBinomial& m) {
            if (static_cast<int>(m.trials.size()) != n ||
                static_cast<int>(m.success.size()) != n) {
              throw InvalidInput(fmt::format(
                  "binomial adversary needs {} trial counts and probabilities",
                  n));
            }
            for (int i = 0; i < n; ++i) {
              if (m.trials[i] < 0) {
                throw InvalidInput("binomial trial counts must be >= 0");
              }
              if (!(m.success[i] >= 0.0 && m.success[i] <= 1.0)) {
                throw InvalidInput("binomial probabilities must lie in [0,1]");
              }
            }
          },
      },
      model);
}

std::string describe(const AdversaryModel& model) {
  return std::visit(
      Overloaded{
          [](const FixedAllocation& m) {
            return "FixedAllocation" + to_string(m.allocation);
          },
          [](const Categorical& m) {
            return fmt::format("Categorical({} atoms)", m.support.size());
          },
          [](const UniformSum& m) {
            return fmt::format("UniformSum({})", m.total);
          },
          [](const IndependentBinomial& m) {
            return fmt::format("IndependentBinomial(trials=[{}], p=[{}])",
                               fmt::join(m.trials, ","),
                               fmt::join(m.success, ","));
          },
      },
      model);
}

Allocation sample_adversary(const AdversaryModel& model, int n, Rng& rng) {
  return std::visit(
      Overloaded{
          [](const FixedAllocation& m) { return m.allocation; },
          [&rng](const Categorical& m) {
            const double draw = rng.uniform();
            double cumulative = 0.0;
            for (std::size_t k = 0; k < m.support.size(); ++k) {
              cumulative += m.probabilities[k];
              if (draw < cumulative) return m.support[k];
            }
            // Rounding left the cumulative sum a hair below one.
            for (std::size_t k = m.support.size(); k-- > 0;) {
              if (m.probabilities[k] > 0.0) return m.support[k];
            }
            return m.support.back();
          },
          [n, &rng](const UniformSum& m) {
            // Stars and bars: choose n-1 bar positions among total+n-1 slots
            // with a partial Fisher-Yates shuffle.
            const int slots = m.total + n - 1;
            std::vector<int> positions(slots);
            std::iota(positions.begin(), positions.end(), 0);
            for (int k = 0; k < n - 1; ++k) {
              const auto pick =
                  k + static_cast<int>(rng.below(static_cast<std::uint64_t>(slots - k)));
              std::swap(positions[k], positions[pick]);
            }
            std::vector<int> bars(positions.begin(), positions.begin() + (n - 1));
            std::sort(bars.begin(), bars.end());
            Allocation a;
            a.troops.resize(n);
            int previous = -1;
            for (int k = 0; k < n - 1; ++k) {
              a.troops[k] = bars[k] - previous - 1;
              previous = bars[k];
            }
            a.troops[n - 1] = slots - previous - 1;
            return a;
          },
          [n, &rng](const IndependentBinomial& m) {
            Allocation a;
            a.troops.assign(n, 0);
            for (int i = 0; i < n; ++i) {
              for (int k = 0; k < m.trials[i]; ++k) {
                if (rng.bernoulli(m.success[i])) ++a.troops[i];
              }
            }
            return a;
          },
      },
      model);
}

std::vector<double> adversary_marginal(const AdversaryModel& model, int n,
                                       int battlefield) {
  if (battlefield < 0 || battlefield >= n) {
    throw InvalidInput("battlefield index out of range");
  }
  return std::visit(
      Overloaded{
          [battlefield](const FixedAllocation& m) {
            std::vector<double> probs(m.allocation.troops[battlefield] + 1, 0.0);
            probs.back() = 1.0;
            return probs;
          },
          [battlefield](const Categorical& m) {
            int top = 0;
            for (const auto& a : m.support) {
              top = std::max(top, a.troops[battlefield]);
            }
            std::vector<double> probs(top + 1, 0.0);
            for (std::size_t k = 0; k < m.support.size(); ++k) {
              probs[m.support[k].troops[battlefield]] += m.probabilities[k];
            }
            return probs;
          },
          [n](const UniformSum& m) {
            // P(v_i = j) = C(total - j + n - 2, n - 2) / C(total + n - 1, n - 1)
            std::vector<double> probs(m.total + 1, 0.0);
            const double all = binomial_coefficient(m.total + n - 1, n - 1);
            for (int j = 0; j <= m.total; ++j) {
              probs[j] = binomial_coefficient(m.total - j + n - 2, n - 2) / all;
            }
            return probs;
          },
          [battlefield](const IndependentBinomial& m) {
            const int trials = m.trials[battlefield];
            const double p = m.success[battlefield];
            std::vector<double> probs(trials + 1, 0.0);
            for (int k = 0; k <= trials; ++k) {
              probs[k] = binomial_coefficient(trials, k) * std::pow(p, k) *
                         std::pow(1.0 - p, trials - k);
            }
            return probs;
          },
      },
      model);
}

}  // namespace blotto
