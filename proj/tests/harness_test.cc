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


#include "blotto/harness.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "blotto/episode_io.hpp"
#include "blotto/errors.hpp"
#include "blotto/validation.hpp"

namespace blotto {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json base_config() {
  return json{{"n", 2},
              {"c", 2.0},
              {"B", 20},
              {"T", 20},
              {"adversary", {{"type", "uniform_sum"}, {"total", 2}}},
              {"seeds", {1, 2}}};
}

std::string field_of(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("blotto_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(ParseConfig, Accepts) {
  const ExperimentSpec spec = parse_config(base_config());
  EXPECT_EQ(spec.n, 2);
  EXPECT_EQ(spec.horizons, std::vector<std::int64_t>{20});
  EXPECT_EQ(spec.config_for(20).m, 2);
}

TEST(ParseConfig, NamesOffendingField) {
  json j = base_config();
  j.erase("B");
  EXPECT_EQ(field_of(j), "B");
  j = base_config();
  j["colour"] = 1;
  EXPECT_EQ(field_of(j), "colour");
  j = base_config();
  j.erase("n");
  EXPECT_EQ(field_of(j), "n");
  j = base_config();
  j["weights"] = {1.0};
  EXPECT_EQ(field_of(j), "weights");
  j = base_config();
  j["n"] = "three";
  EXPECT_EQ(field_of(j), "n");
  j = base_config();
  j["adversary"] = {{"type", "mystery"}};
  EXPECT_EQ(field_of(j).rfind("adversary", 0), 0u);
  j = base_config();
  j["budget_per_round"] = 1.0;
  EXPECT_EQ(field_of(j), "B");
  j = base_config();
  j["B"] = 5;  // m = floor(2 * 5 / 20) = 0
  EXPECT_EQ(field_of(j), "config[T=20]");
}

TEST(AdversaryJson, RoundTrip) {
  const std::vector<AdversaryModel> models{
      FixedAllocation{Allocation{{1, 0}}},
      Categorical{{Allocation{{0, 0}}, Allocation{{1, 0}}}, {0.4, 0.6}},
      UniformSum{3},
      IndependentBinomial{{2, 2}, {0.5, 0.25}}};
  for (const auto& model : models) {
    const json j = adversary_to_json(model);
    EXPECT_EQ(adversary_to_json(adversary_from_json(j)), j);
  }
}

TEST(Run, WritesExpectedFiles) {
  ExperimentSpec spec = parse_config(base_config());
  spec.horizons = {16, 32};
  spec.seeds = {1, 2, 3};
  spec.out_dir = scratch_dir("files").string();
  std::ostringstream log;
  ASSERT_EQ(run(spec, log), 0);
  int episodes = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(fs::path(spec.out_dir) / "episodes")) {
    ++episodes;
  }
  EXPECT_EQ(episodes, 6);
  EXPECT_TRUE(fs::exists(fs::path(spec.out_dir) / "rounds" / "T32_seed2.csv"));
  EXPECT_TRUE(fs::exists(fs::path(spec.out_dir) / "batch_summary.csv"));
  const json episode = json::parse(slurp(fs::path(spec.out_dir) / "episodes" / "T16_seed1.json"));
  EXPECT_EQ(episode["version"], version_tag());
  EXPECT_EQ(episode["parameters"]["generator"], "mt19937_64");
  const double opt_dp = episode["oracle"]["opt_dp"].get<double>();
  const double reward = episode["summary"]["total_reward"].get<double>();
  EXPECT_NEAR(episode["summary"]["regret"].get<double>(), opt_dp - reward, 1e-12);
}

TEST(Run, SummaryMatchesEpisodes) {
  ExperimentSpec spec = parse_config(base_config());
  spec.seeds = {4, 5, 6, 7};
  spec.emit_csv = false;
  spec.out_dir = scratch_dir("summary").string();
  std::ostringstream log;
  ASSERT_EQ(run(spec, log), 0);
  std::vector<double> regrets;
  for (std::uint64_t seed : spec.seeds) {
    const json episode = json::parse(
        slurp(fs::path(spec.out_dir) / "episodes" / ("T20_seed" + std::to_string(seed) + ".json")));
    regrets.push_back(episode["summary"]["regret"].get<double>());
  }
  double mean = 0.0;
  for (double r : regrets) mean += r;
  mean /= regrets.size();
  const json summary = json::parse(slurp(fs::path(spec.out_dir) / "batch_summary.json"));
  EXPECT_NEAR(summary["horizons"][0]["mean_regret"].get<double>(), mean, 1e-12);
}

TEST(Run, RepeatedRunsAreByteIdentical) {
  ExperimentSpec spec = parse_config(base_config());
  spec.out_dir = scratch_dir("repeat_a").string();
  std::ostringstream log;
  ASSERT_EQ(run(spec, log), 0);
  const std::string first = slurp(fs::path(spec.out_dir) / "episodes" / "T20_seed2.json");
  const std::string first_csv = slurp(fs::path(spec.out_dir) / "rounds" / "T20_seed2.csv");
  spec.out_dir = scratch_dir("repeat_b").string();
  ASSERT_EQ(run(spec, log), 0);
  EXPECT_EQ(slurp(fs::path(spec.out_dir) / "episodes" / "T20_seed2.json"), first);
  EXPECT_EQ(slurp(fs::path(spec.out_dir) / "rounds" / "T20_seed2.csv"), first_csv);
}

TEST(GraphStats, FixedFourThree) {
  const GraphStats stats = graph_stats(4, 3);
  EXPECT_EQ(stats.edges, 40);
  EXPECT_EQ(stats.formula_edges, 40);
  EXPECT_EQ(stats.paths, 35u);
}

TEST(Validation, SmallGraphPasses) {
  for (const CheckResult& check : run_validation(2, 2, 20'000, 3)) {
    EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
  }
}

}  // namespace
}  // namespace blotto
