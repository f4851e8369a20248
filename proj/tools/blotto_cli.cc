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

// Command-line front end: run | oracle | graph | validate.
//
// Log level comes from the BLOTTO_LOG_LEVEL environment variable
// (trace, debug, info, warn, error, off; default info).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "blotto/errors.hpp"
#include "blotto/harness.hpp"
#include "blotto/layered_graph.hpp"
#include "blotto/oracles.hpp"
#include "blotto/validation.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  std::vector<std::uint64_t> seeds;
  std::vector<std::int64_t> horizons;
  std::int64_t mc_samples = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out, "Output directory");
  cmd->add_option("--seeds", flags.seeds, "Comma-separated master seeds")->delimiter(',');
  cmd->add_option("--horizons", flags.horizons, "Comma-separated horizons T")
      ->delimiter(',');
  cmd->add_option("--mc-samples", flags.mc_samples, "Monte-Carlo sample count");
}

blotto::ExperimentSpec load(const CommonFlags& flags) {
  blotto::ExperimentSpec spec = blotto::load_config(flags.config);
  if (!flags.out.empty()) spec.out_dir = flags.out;
  if (!flags.seeds.empty()) spec.seeds = flags.seeds;
  if (!flags.horizons.empty()) spec.horizons = flags.horizons;
  if (flags.mc_samples > 0) spec.mc_samples = flags.mc_samples;
  spec.validate();
  return spec;
}

void set_log_level() {
  const char* level = std::getenv("BLOTTO_LOG_LEVEL");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::info);
}

int cmd_run(const CommonFlags& flags) {
  const blotto::ExperimentSpec spec = load(flags);
  for (std::int64_t horizon : spec.horizons) {
    const blotto::GraphStats stats = blotto::graph_stats(spec.config_for(horizon).m, spec.n);
    spdlog::info("T={}: E={} paths={} lambda*={:.6g}", horizon, stats.edges, stats.paths,
                 stats.lambda_star);
  }
  std::ostringstream log;
  const int code = blotto::run(spec, log);
  std::istringstream lines(log.str());
  for (std::string line; std::getline(lines, line);) {
    if (code != 0 && line.starts_with("error")) {
      spdlog::error("{}", line);
    } else {
      spdlog::info("{}", line);
    }
  }
  spdlog::info("results written to {}", spec.out_dir);
  return code;
}

int cmd_oracle(const CommonFlags& flags) {
  const blotto::ExperimentSpec spec = load(flags);
  for (std::int64_t horizon : spec.horizons) {
    const blotto::GameConfig config = spec.config_for(horizon);
    const blotto::OracleValues oracle = blotto::compute_oracles(config, spec.adversary);
    std::cout << fmt::format("T={} B={} m={} n={}\n", horizon, config.B, config.m, config.n);
    if (oracle.opt_lp) {
      std::cout << fmt::format("  OPT_LP per round = {:.17g}\n  T * OPT_LP       = {:.17g}\n",
                               *oracle.opt_lp, *oracle.opt_lp * horizon);
    }
    if (oracle.opt_dp) std::cout << fmt::format("  OPT_DP           = {:.17g}\n", *oracle.opt_dp);
    if (!oracle.note.empty()) std::cout << "  note: " << oracle.note << "\n";
  }
  return 0;
}

int cmd_graph(int m, int n, bool edges) {
  const blotto::GraphStats stats = blotto::graph_stats(m, n);
  std::cout << fmt::format(
      "fixed-set graph m={} n={}\n  edges E      = {} (formula {})\n  paths S      = {}\n"
      "  ln S         = {:.17g}\n  lambda*      = {:.17g}\n",
      m, n, stats.edges, stats.formula_edges, stats.paths, stats.log_paths,
      stats.lambda_star);
  if (edges) std::cout << blotto::export_edge_list(blotto::LayeredGraph::fixed_set(m, n));
  return 0;
}

int cmd_validate(int m, int n, std::int64_t samples, std::uint64_t seed) {
  const auto checks = blotto::run_validation(m, n, samples, seed);
  bool all = true;
  for (const auto& check : checks) {
    std::cout << fmt::format("[{}] {}: {}\n", check.passed ? "PASS" : "FAIL", check.name,
                             check.detail);
    all = all && check.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  set_log_level();
  CLI::App app{"Budget-constrained dynamic Colonel Blotto learner"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* run = app.add_subcommand("run", "Run a seeded experiment sweep");
  run->add_option("--config", flags.config, "Experiment JSON")->required();
  add_common(run, flags);

  auto* oracle = app.add_subcommand("oracle", "Print OPT_LP and OPT_DP");
  oracle->add_option("--config", flags.config, "Experiment JSON")->required();
  add_common(oracle, flags);

  int m = 4;
  int n = 3;
  bool edges = false;
  std::uint64_t seed = 1;
  auto* graph = app.add_subcommand("graph", "Print fixed-set graph statistics");
  graph->add_option("--config", flags.config, "Experiment JSON (uses its first horizon)");
  graph->add_option("-m", m, "Per-round cap");
  graph->add_option("-n", n, "Battlefields");
  graph->add_flag("--edges", edges, "Also print the edge list");

  auto* validate = app.add_subcommand("validate", "Statistical self-tests");
  validate->add_option("--config", flags.config, "Experiment JSON (uses its first horizon)");
  validate->add_option("-m", m, "Per-round cap");
  validate->add_option("-n", n, "Battlefields");
  validate->add_option("--seed", seed, "Seed");
  add_common(validate, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    auto shape_from_config = [&] {
      if (flags.config.empty()) return;
      const blotto::ExperimentSpec spec = load(flags);
      m = spec.config_for(spec.horizons.front()).m;
      n = spec.n;
    };
    if (*run) return cmd_run(flags);
    if (*oracle) return cmd_oracle(flags);
    if (*graph) {
      shape_from_config();
      return cmd_graph(m, n, edges);
    }
    if (*validate) {
      shape_from_config();
      return cmd_validate(m, n, flags.mc_samples > 0 ? flags.mc_samples : 100'000, seed);
    }
  } catch (const blotto::ConfigError& e) {
    spdlog::error("config error: {}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
