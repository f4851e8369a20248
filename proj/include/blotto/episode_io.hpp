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

// JSON and CSV forms of episodes and adversary models.
//
// Per-round CSV columns, in order:
//   t, u1..un, v1..vn, r, w, L_troop, L_time, dual, fed_payoff, x_after,
//   terminated
// `dual` is troop, time or none (fallback round; fed_payoff is then empty).
// Floating-point fields use 17 significant digits.

#include <string>

#include <json.hpp>

#include "blotto/game_core.hpp"
#include "blotto/lagrange_bwk.hpp"

namespace blotto {

nlohmann::json adversary_to_json(const AdversaryModel& model);
// Throws ConfigError naming the offending field under `path`.
AdversaryModel adversary_from_json(const nlohmann::json& j,
                                   const std::string& path = "adversary");

nlohmann::json config_to_json(const GameConfig& config);

// {config, adversary, parameters, rounds: [...], summary}
nlohmann::json episode_to_json(const EpisodeResult& result);

std::string rounds_csv(const EpisodeResult& result);

std::string format_double(double value);

}  // namespace blotto
