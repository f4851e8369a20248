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

#include "blotto/lagrange_bwk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "blotto/edge_bandit.hpp"
#include "blotto/errors.hpp"
#include "blotto/layered_graph.hpp"

namespace blotto {

namespace {
constexpr double kRangeSlack = 1e-12;
}

LagrangePayoffs lagrange_payoffs(double reward, std::int64_t consumption,
                                 std::int64_t horizon, std::int64_t budget,
                                 double c) {
  if (consumption < 0) throw InternalError("negative consumption");
  if (consumption > 0 && budget <= 0) {
    throw InternalError("positive consumption with zero budget");
  }
  const double spend =
      consumption == 0 ? 0.0
                       : static_cast<double>(horizon) / static_cast<double>(budget) *
                             static_cast<double>(consumption);
  LagrangePayoffs out{reward + 1.0 - spend, reward};
  if (out.troop < 1.0 - c - kRangeSlack || out.troop > 2.0 + kRangeSlack) {
    throw InternalError(fmt::format("troop payoff {} outside [{}, 2]", out.troop, 1.0 - c));
  }
  if (out.time < -kRangeSlack || out.time > 1.0 + kRangeSlack) {
    throw InternalError(fmt::format("time payoff {} outside [0, 1]", out.time));
  }
  return out;
}

EpisodeResult run_episode(const GameConfig& config, const AdversaryModel& adversary,
                          std::uint64_t seed) {
  config.validate();
  validate_adversary(adversary, config.n);

  // Fed payoffs lie in [1 - c, 2]; 1 + c bounds their magnitude once c >= 1.
  const double reward_scale = std::max(1.0 + config.c, 2.0);
  auto graph = std::make_shared<const LayeredGraph>(
      LayeredGraph::fixed_set(config.m, config.n));
  EdgeBandit edge(graph, config.T, reward_scale);
  Hedge hedge(config.T, config.c);
  Rng rng(seed);

  EpisodeResult result;
  result.config = config;
  result.adversary = adversary;
  const EdgeParameters& ep = edge.parameters();
  result.parameters = EpisodeParameters{
      ep.gamma,       ep.gamma_raw, ep.gamma_clamped, ep.eta,
      hedge.epsilon(), ep.lambda_star, ep.log_paths,  ep.num_edges,
      ep.gamma > 0.0 ? reward_scale * config.n / (ep.gamma * ep.lambda_star)
                     : std::numeric_limits<double>::infinity(),
      seed,           std::string(Rng::kGeneratorName)};
  result.rounds.reserve(static_cast<std::size_t>(config.T));

  BudgetState state{config.B, 1};
  for (std::int64_t t = 1; t <= config.T; ++t) {
    RoundRecord rec;
    rec.t = t;
    rec.adversary = sample_adversary(adversary, config.n, rng);

    // An exhausted budget leaves only the zero allocation.
    bool fallback = state.x == 0;
    PathVector path;
    if (!fallback) {
      path = edge.sample_path(rng);
      rec.learner = path_to_allocation(*graph, path);
      fallback = rec.learner.total() > state.x;
    }
    if (fallback) {
      auto reduced = std::make_shared<const LayeredGraph>(
          LayeredGraph::reduced(static_cast<int>(state.x), config.n));
      EdgeBandit last(reduced, edge.gamma(), edge.eta(), reward_scale,
                      carry_weights(*graph, edge.weights(), *reduced));
      rec.learner = path_to_allocation(*reduced, last.sample_path(rng));
      if (rec.learner.total() != state.x) {
        throw InternalError("fallback allocation does not spend the remainder");
      }
    }

    rec.reward = payoff(rec.learner, rec.adversary, config.weights);
    rec.consumption = rec.learner.total();
    rec.lagrange = lagrange_payoffs(rec.reward, rec.consumption, config.T,
                                    config.B, config.c);
    rec.troop_probability = hedge.probability(Resource::kTroop);

    if (fallback) {
      rec.fallback = true;
      rec.terminated = true;
    } else {
      const Resource choice = hedge.sample(rng);
      const double fed =
          choice == Resource::kTroop ? rec.lagrange.troop : rec.lagrange.time;
      rec.dual = choice;
      rec.fed_payoff = fed;
      const EdgeUpdate update = edge.learn(path, fed);
      rec.max_abs_estimate = update.max_abs_estimate;
      rec.max_abs_path_estimate = update.max_abs_path_estimate;
      rec.max_weight = update.max_weight;
      if (update.bound_violated) ++result.bound_violations;
      if (update.eta_path_estimate > 1.0 + 1e-9) ++result.eta_violations;
      result.max_eta_path_estimate =
          std::max(result.max_eta_path_estimate, update.eta_path_estimate);
      hedge.update(rec.lagrange.troop, rec.lagrange.time);
      rec.terminated = t == config.T;
    }

    state = step_state(state, rec.learner);
    rec.remaining = state.x;
    result.total_reward += rec.reward;
    result.total_consumption += rec.consumption;
    result.fallback_used = result.fallback_used || rec.fallback;
    const bool stop = rec.terminated;
    result.rounds.push_back(std::move(rec));
    if (stop) break;
  }
  result.stop_round = result.rounds.empty() ? 0 : result.rounds.back().t;
  if (result.total_consumption > config.B) {
    throw InternalError("episode spent more than its budget");
  }
  return result;
}

std::vector<EpisodeResult> run_batch(const GameConfig& config,
                                     const AdversaryModel& adversary,
                                     std::span<const std::uint64_t> seeds,
                                     unsigned jobs) {
  std::vector<EpisodeResult> results(seeds.size());
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(seeds.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < seeds.size(); k = next++) {
      try {
        results[k] = run_episode(config, adversary, seeds[k]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace blotto
