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

// Hedge over the two Lagrangian resources. Full-information: both costs are
// revealed every round.

#include <array>
#include <cstdint>
#include <string>

#include "blotto/rng.hpp"

namespace blotto {

enum class Resource { kTroop = 0, kTime = 1 };

std::string to_string(Resource r);

class Hedge {
 public:
  // epsilon = sqrt(8 ln 2 / T). Costs lie in [lo, 2] with lo = min(0, 1 - c):
  // the troop payoff reaches 1 - c and the time payoff reaches 0.
  Hedge(std::int64_t horizon, double c);

  double epsilon() const { return epsilon_; }
  double cost_low() const { return low_; }
  double cost_high() const { return high_; }
  const std::array<double, 2>& weights() const { return weights_; }
  double probability(Resource r) const;

  Resource sample(Rng& rng) const;

  // Costs are mapped to [0,1] by (L - lo) / (2 - lo), then
  // w_i <- w_i exp(-epsilon * cost_i) and both weights are divided by their
  // max. Throws InvalidInput for a cost outside [lo, 2].
  void update(double cost_troop, double cost_time);

  double normalize(double cost) const { return (cost - low_) / (high_ - low_); }

 private:
  double epsilon_;
  double low_;
  double high_;
  std::array<double, 2> weights_{1.0, 1.0};
};

}  // namespace blotto
