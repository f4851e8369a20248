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

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "blotto/edge_bandit.hpp"
#include "blotto/episode_io.hpp"
#include "blotto/errors.hpp"
#include "blotto/lagrange_bwk.hpp"
#include "blotto/layered_graph.hpp"
#include "blotto/oracles.hpp"
#include "blotto/rng.hpp"

#ifndef BLOTTO_VERSION
#define BLOTTO_VERSION "unknown"
#endif

namespace blotto {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

template <class T>
T field_as(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key, fmt::format("wrong type ({})", j.at(key).type_name()));
  }
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw Error("failed writing " + path.string());
}

struct BatchRow {
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::optional<double> regret;
  double reward = 0.0;
  std::int64_t stop_round = 0;
};

}  // namespace

std::string version_tag() { return "blotto-bwk " BLOTTO_VERSION; }

std::int64_t ExperimentSpec::budget_for(std::int64_t horizon) const {
  if (budget) return *budget;
  if (budget_per_round) {
    return static_cast<std::int64_t>(std::llround(*budget_per_round * horizon));
  }
  throw ConfigError("B", "missing required field (or budget_per_round)");
}

GameConfig ExperimentSpec::config_for(std::int64_t horizon) const {
  try {
    return GameConfig::make(n, horizon, budget_for(horizon), c, weights);
  } catch (const InvalidInput& e) {
    throw ConfigError(fmt::format("config[T={}]", horizon), e.what());
  }
}

void ExperimentSpec::validate() const {
  if (n < 2) throw ConfigError("n", "must be at least 2");
  if (!(c > 0.0)) throw ConfigError("c", "must be positive");
  if (budget && budget_per_round) {
    throw ConfigError("B", "give either B or budget_per_round, not both");
  }
  if (!budget && !budget_per_round) {
    throw ConfigError("B", "missing required field (or budget_per_round)");
  }
  if (budget && *budget < 0) throw ConfigError("B", "must be nonnegative");
  if (budget_per_round && !(*budget_per_round >= 0.0)) {
    throw ConfigError("budget_per_round", "must be nonnegative");
  }
  if (!weights.empty() && static_cast<int>(weights.size()) != n) {
    throw ConfigError("weights", fmt::format("has {} entries, expected n = {}",
                                             weights.size(), n));
  }
  if (horizons.empty()) throw ConfigError("T", "missing required field (or horizons)");
  for (std::int64_t horizon : horizons) {
    if (horizon < 1) throw ConfigError("horizons", "every horizon must be positive");
  }
  if (seeds.empty()) throw ConfigError("seeds", "needs at least one seed");
  if (mc_samples < 1) throw ConfigError("mc_samples", "must be positive");
  if (jobs < 1) throw ConfigError("jobs", "must be positive");
  try {
    validate_adversary(adversary, n);
  } catch (const InvalidInput& e) {
    throw ConfigError("adversary", e.what());
  }
  for (std::int64_t horizon : horizons) config_for(horizon);
}

json spec_to_json(const ExperimentSpec& spec) {
  json j{{"n", spec.n},
         {"c", spec.c},
         {"horizons", spec.horizons},
         {"weights", spec.weights},
         {"adversary", adversary_to_json(spec.adversary)},
         {"seeds", spec.seeds},
         {"out", spec.out_dir},
         {"emit_csv", spec.emit_csv},
         {"emit_oracles", spec.emit_oracles},
         {"mc_samples", spec.mc_samples},
         {"jobs", spec.jobs}};
  if (spec.budget) j["B"] = *spec.budget;
  if (spec.budget_per_round) j["budget_per_round"] = *spec.budget_per_round;
  return j;
}

ExperimentSpec parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");
  static const std::set<std::string> allowed{
      "n",     "T",        "B",          "budget_per_round", "c",
      "weights", "adversary", "seeds",    "horizons",         "out",
      "emit_csv", "emit_oracles", "mc_samples", "jobs"};
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(key, "unknown key");
  }
  for (const char* key : {"n", "c", "adversary"}) {
    if (!j.contains(key)) throw ConfigError(key, "missing required field");
  }

  ExperimentSpec spec;
  spec.n = field_as<int>(j, "n");
  spec.c = field_as<double>(j, "c");
  if (j.contains("B")) spec.budget = field_as<std::int64_t>(j, "B");
  if (j.contains("budget_per_round")) {
    spec.budget_per_round = field_as<double>(j, "budget_per_round");
  }
  if (j.contains("T") && j.contains("horizons")) {
    throw ConfigError("horizons", "give either T or horizons, not both");
  }
  if (j.contains("T")) spec.horizons = {field_as<std::int64_t>(j, "T")};
  if (j.contains("horizons")) spec.horizons = field_as<std::vector<std::int64_t>>(j, "horizons");
  if (j.contains("weights")) spec.weights = field_as<std::vector<double>>(j, "weights");
  spec.adversary = adversary_from_json(j.at("adversary"), "adversary");
  if (j.contains("seeds")) spec.seeds = field_as<std::vector<std::uint64_t>>(j, "seeds");
  if (j.contains("out")) spec.out_dir = field_as<std::string>(j, "out");
  if (j.contains("emit_csv")) spec.emit_csv = field_as<bool>(j, "emit_csv");
  if (j.contains("emit_oracles")) spec.emit_oracles = field_as<bool>(j, "emit_oracles");
  if (j.contains("mc_samples")) spec.mc_samples = field_as<std::int64_t>(j, "mc_samples");
  if (j.contains("jobs")) spec.jobs = field_as<unsigned>(j, "jobs");
  spec.validate();
  return spec;
}

ExperimentSpec load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", fmt::format("malformed JSON in {}: {}", path.string(), e.what()));
  }
  return parse_config(j);
}

OracleValues compute_oracles(const GameConfig& config, const AdversaryModel& adversary) {
  OracleValues out;
  try {
    const ArmTable table = expected_reward_table(enumerate_actions(config.m, config.n),
                                                 adversary, config.weights);
    out.opt_lp = opt_lp(table, config.B, config.T).value;
    try {
      out.opt_dp = opt_dp(table, config.B, config.T, config.m);
    } catch (const SizeLimitExceeded& e) {
      out.note = std::string("OPT_DP skipped: ") + e.what();
    }
  } catch (const SizeLimitExceeded& e) {
    out.note = std::string("oracles skipped: ") + e.what();
  }
  return out;
}

json oracle_to_json(const OracleValues& oracle, std::int64_t horizon) {
  json j{{"opt_lp_per_round", oracle.opt_lp ? json(*oracle.opt_lp) : json(nullptr)},
         {"opt_lp_total",
          oracle.opt_lp ? json(*oracle.opt_lp * static_cast<double>(horizon)) : json(nullptr)},
         {"opt_dp", oracle.opt_dp ? json(*oracle.opt_dp) : json(nullptr)}};
  if (!oracle.note.empty()) j["note"] = oracle.note;
  return j;
}

GraphStats graph_stats(int m, int n) {
  const LayeredGraph g = LayeredGraph::fixed_set(m, n);
  const ExplorationDist mu = ExplorationDist::uniform(g);
  GraphStats s;
  s.m = m;
  s.n = n;
  s.edges = g.num_edges();
  s.formula_edges = (m + 1) * ((m + 2) * (n - 1) + 4) / 2;
  s.paths = mu.paths.exact;
  s.log_paths = mu.paths.log_count;
  s.lambda_star = mu.lambda_star;
  return s;
}

int run(const ExperimentSpec& spec, std::ostream& log) {
  spec.validate();
  const fs::path out_dir(spec.out_dir);
  fs::create_directories(out_dir / "episodes");
  if (spec.emit_csv) fs::create_directories(out_dir / "rounds");

  std::vector<BatchRow> rows;
  json per_horizon = json::array();
  std::int64_t violations = 0;

  for (std::int64_t horizon : spec.horizons) {
    const GameConfig config = spec.config_for(horizon);
    OracleValues oracle;
    if (spec.emit_oracles) {
      oracle = compute_oracles(config, spec.adversary);
    } else {
      oracle.note = "oracles disabled";
    }
    log << fmt::format("T={} B={} m={}: OPT_LP*T={} OPT_DP={}{}\n", horizon, config.B,
                       config.m,
                       oracle.opt_lp ? format_double(*oracle.opt_lp * horizon) : "n/a",
                       oracle.opt_dp ? format_double(*oracle.opt_dp) : "n/a",
                       oracle.note.empty() ? "" : " (" + oracle.note + ")");

    std::vector<std::uint64_t> streams;
    for (std::size_t k = 0; k < spec.seeds.size(); ++k) {
      streams.push_back(derive_stream_seed(spec.seeds[k], static_cast<std::uint64_t>(horizon), k));
    }
    const std::vector<EpisodeResult> results =
        run_batch(config, spec.adversary, streams, spec.jobs);

    std::vector<double> regrets;
    for (std::size_t k = 0; k < results.size(); ++k) {
      const EpisodeResult& result = results[k];
      BatchRow row{horizon, spec.seeds[k], std::nullopt, result.total_reward,
                   result.stop_round};
      if (oracle.opt_dp) {
        row.regret = regret(*oracle.opt_dp, result.total_reward);
        regrets.push_back(*row.regret);
      }
      violations += result.bound_violations + result.eta_violations;

      json episode = episode_to_json(result);
      episode["version"] = version_tag();
      episode["master_seed"] = spec.seeds[k];
      episode["stream_seed"] = streams[k];
      episode["oracle"] = oracle_to_json(oracle, horizon);
      episode["summary"]["regret"] = row.regret ? json(*row.regret) : json(nullptr);
      const std::string stem = fmt::format("T{}_seed{}", horizon, spec.seeds[k]);
      write_file(out_dir / "episodes" / (stem + ".json"), episode.dump(1) + "\n");
      if (spec.emit_csv) write_file(out_dir / "rounds" / (stem + ".csv"), rounds_csv(result));
      rows.push_back(row);
    }

    json stats{{"T", horizon}, {"B", config.B}, {"m", config.m},
               {"episodes", results.size()}, {"oracle", oracle_to_json(oracle, horizon)}};
    if (!regrets.empty()) {
      double mean = 0.0;
      for (double r : regrets) mean += r;
      mean /= static_cast<double>(regrets.size());
      double var = 0.0;
      for (double r : regrets) var += (r - mean) * (r - mean);
      const double sd = regrets.size() > 1 ? std::sqrt(var / static_cast<double>(regrets.size() - 1)) : 0.0;
      stats["mean_regret"] = mean;
      stats["sd_regret"] = sd;
      log << fmt::format("  mean regret {:.4f} (sd {:.4f}) over {} seeds\n", mean, sd,
                         regrets.size());
    }
    per_horizon.push_back(stats);
  }

  std::string csv = "T,seed,regret,reward,tau\n";
  for (const BatchRow& row : rows) {
    csv += fmt::format("{},{},{},{},{}\n", row.horizon, row.seed,
                       row.regret ? format_double(*row.regret) : std::string(),
                       format_double(row.reward), row.stop_round);
  }
  write_file(out_dir / "batch_summary.csv", csv);
  json summary{{"version", version_tag()},
               {"generator", std::string(Rng::kGeneratorName)},
               {"spec", spec_to_json(spec)},
               {"horizons", per_horizon}};
  write_file(out_dir / "batch_summary.json", summary.dump(1) + "\n");

  if (violations > 0) {
    log << fmt::format("error: {} rounds violated the estimate bounds\n", violations);
    return 3;
  }
  return 0;
}

}  // namespace blotto
