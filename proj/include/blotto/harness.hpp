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

// Experiment configuration, seeded batch execution and result files.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "blotto/game_core.hpp"

namespace blotto {

std::string version_tag();

struct ExperimentSpec {
  int n = 0;
  double c = 0.0;
  std::optional<std::int64_t> budget;         // "B"
  std::optional<double> budget_per_round;     // B = round(ratio * T)
  std::vector<std::int64_t> horizons;         // "T" or "horizons"
  std::vector<double> weights;                // empty: uniform
  AdversaryModel adversary;
  std::vector<std::uint64_t> seeds{1};
  std::string out_dir = "results";
  bool emit_csv = true;
  bool emit_oracles = true;
  std::int64_t mc_samples = 100'000;
  unsigned jobs = 1;

  std::int64_t budget_for(std::int64_t horizon) const;
  GameConfig config_for(std::int64_t horizon) const;
  // Throws ConfigError for the first violated constraint, for every horizon.
  void validate() const;
};

nlohmann::json spec_to_json(const ExperimentSpec& spec);

// Unknown keys and constraint violations raise ConfigError with a field path.
ExperimentSpec parse_config(const nlohmann::json& j);
ExperimentSpec load_config(const std::filesystem::path& path);

struct OracleValues {
  std::optional<double> opt_lp;  // per round
  std::optional<double> opt_dp;
  std::string note;              // why a value is missing
};

OracleValues compute_oracles(const GameConfig& config, const AdversaryModel& adversary);
nlohmann::json oracle_to_json(const OracleValues& oracle, std::int64_t horizon);

struct GraphStats {
  int m = 0;
  int n = 0;
  int edges = 0;
  int formula_edges = 0;  // (m+1)[(m+2)(n-1)+4]/2
  std::uint64_t paths = 0;
  double log_paths = 0.0;
  double lambda_star = 0.0;
};

GraphStats graph_stats(int m, int n);

// Writes episodes/, rounds/ (optional), batch_summary.csv and
// batch_summary.json under spec.out_dir. Returns 0 on success and 3 if any
// episode recorded an estimate-bound violation.
int run(const ExperimentSpec& spec, std::ostream& log);

}  // namespace blotto
