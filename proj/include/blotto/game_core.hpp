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

// One-shot Colonel Blotto payoff, learner budget dynamics and the stochastic
// adversary families.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "blotto/rng.hpp"

namespace blotto {

// Integer troop vector, one entry per battlefield.
struct Allocation {
  std::vector<int> troops;

  int size() const { return static_cast<int>(troops.size()); }
  std::int64_t total() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

std::string to_string(const Allocation& a);

struct GameConfig {
  int n = 0;             // battlefields
  std::int64_t T = 0;    // horizon
  std::int64_t B = 0;    // total learner budget
  double c = 0.0;        // per-round cap multiplier
  int m = 0;             // per-round cap, floor(c B / T)
  std::vector<double> weights;  // battlefield weights, sum to one

  // Derives m = floor(cB/T) and fills uniform weights when none are given.
  // Throws InvalidInput when the result fails validate().
  static GameConfig make(int n, std::int64_t T, std::int64_t B, double c,
                         std::vector<double> weights = {});

  // Checks field ranges and the weight normalization. m is only required to
  // be positive, so callers may pin it explicitly (e.g. a zero budget).
  void validate() const;
};

// floor(c B / T), robust to representation error in c.
int per_round_cap(std::int64_t T, std::int64_t B, double c);

// Reward of allocation u against v: sum of b_i over won battlefields plus
// b_i / 2 over ties.
double payoff(std::span<const int> u, std::span<const int> v,
              std::span<const double> weights);
double payoff(const Allocation& u, const Allocation& v,
              std::span<const double> weights);

struct BudgetState {
  std::int64_t x = 0;  // remaining budget
  std::int64_t t = 1;  // round index, 1-based
};

// x <- x - sum(u), t <- t + 1. Throws BudgetViolation on overspend.
BudgetState step_state(const BudgetState& state, const Allocation& u);

// ---------------------------------------------------------------------------
// Adversary families. The adversary draws i.i.d. each round and has no budget
// of its own.

struct FixedAllocation {
  Allocation allocation;
};

struct Categorical {
  std::vector<Allocation> support;
  std::vector<double> probabilities;
};

// Uniform over all nonnegative integer vectors summing to exactly `total`.
struct UniformSum {
  int total = 0;
};

// Battlefield i receives Binomial(trials[i], success[i]) troops.
struct IndependentBinomial {
  std::vector<int> trials;
  std::vector<double> success;
};

using AdversaryModel =
    std::variant<FixedAllocation, Categorical, UniformSum, IndependentBinomial>;

// Throws InvalidInput if the model is malformed for n battlefields.
void validate_adversary(const AdversaryModel& model, int n);

std::string describe(const AdversaryModel& model);

Allocation sample_adversary(const AdversaryModel& model, int n, Rng& rng);

// Marginal law of the troops on one battlefield: probs[k] = P(v_i = k).
std::vector<double> adversary_marginal(const AdversaryModel& model, int n,
                                       int battlefield);

}  // namespace blotto
