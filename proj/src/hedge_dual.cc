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

#include "blotto/hedge_dual.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "blotto/errors.hpp"

namespace blotto {

namespace {
constexpr double kCostSlack = 1e-12;
}

std::string to_string(Resource r) {
  return r == Resource::kTroop ? "troop" : "time";
}

Hedge::Hedge(std::int64_t horizon, double c)
    : epsilon_(0.0), low_(std::min(0.0, 1.0 - c)), high_(2.0) {
  if (horizon < 1) throw InvalidInput("Hedge horizon must be at least 1");
  if (!(c > 0.0)) throw InvalidInput("Hedge cost range needs c > 0");
  epsilon_ = std::sqrt(8.0 * std::log(2.0) / static_cast<double>(horizon));
}

double Hedge::probability(Resource r) const {
  return weights_[static_cast<int>(r)] / (weights_[0] + weights_[1]);
}

Resource Hedge::sample(Rng& rng) const {
  return rng.uniform() < probability(Resource::kTroop) ? Resource::kTroop
                                                        : Resource::kTime;
}

void Hedge::update(double cost_troop, double cost_time) {
  for (double cost : {cost_troop, cost_time}) {
    if (!(cost >= low_ - kCostSlack && cost <= high_ + kCostSlack)) {
      throw InvalidInput(fmt::format("Hedge cost {} outside [{}, {}]", cost, low_, high_));
    }
  }
  weights_[0] *= std::exp(-epsilon_ * normalize(cost_troop));
  weights_[1] *= std::exp(-epsilon_ * normalize(cost_time));
  const double top = std::max(weights_[0], weights_[1]);
  // Floor keeps both weights positive on very long horizons.
  weights_[0] = std::max(weights_[0] / top, 1e-300);
  weights_[1] = std::max(weights_[1] / top, 1e-300);
}

}  // namespace blotto
