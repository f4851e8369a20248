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


#include "blotto/edge_bandit.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "blotto/errors.hpp"
#include "blotto/layered_graph.hpp"
#include "blotto/rng.hpp"

namespace blotto {
namespace {

std::shared_ptr<const LayeredGraph> fixed(int m, int n) {
  return std::make_shared<const LayeredGraph>(LayeredGraph::fixed_set(m, n));
}

std::vector<double> random_weights(const LayeredGraph& g, Rng& rng) {
  std::vector<double> w(g.num_edges());
  for (const auto& e : g.edges()) w[e.id] = e.auxiliary() ? 1.0 : 0.5 + 1.5 * rng.uniform();
  return w;
}

TEST(EdgeParameters, EtaTimesRatioIsGamma) {
  const auto p = edge_parameters(3, 40, 0.03268104127154489, std::log(35.0), 1'000'000, 1.0);
  ASSERT_FALSE(p.gamma_clamped);
  EXPECT_NEAR(p.eta * 3 / 0.03268104127154489, p.gamma, 1e-15);
}

TEST(EdgeParameters, IndependentFormulaEvaluation) {
  const auto g = fixed(4, 3);
  EdgeBandit bandit(g, 10'000, 1.0);
  const auto& p = bandit.parameters();
  const double lambda = p.lambda_star;
  const double e = 40.0;
  const double root = std::sqrt(std::log(35.0) /
                                ((3.0 / (e * lambda) + 1.0) * e * std::pow(1e4, 2.0 / 3.0)));
  EXPECT_NEAR(p.gamma_raw, 3.0 / lambda * root, 1e-12);
  EXPECT_NEAR(p.eta, std::min(1.0, 3.0 / lambda * root) * lambda / 3.0, 1e-14);
  EXPECT_NEAR(p.log_paths, std::log(35.0), 1e-14);
}

TEST(EdgeParameters, GammaDecreasesWithHorizonAndClamps) {
  double previous = 2.0;
  for (std::int64_t t : {10, 1000, 100'000, 10'000'000}) {
    const auto p = edge_parameters(3, 40, 0.0327, std::log(35.0), t, 1.0);
    EXPECT_LE(p.gamma, 1.0);
    EXPECT_GT(p.gamma, 0.0);
    EXPECT_LE(p.gamma, previous);
    previous = p.gamma;
  }
  EXPECT_TRUE(edge_parameters(3, 40, 0.0327, std::log(35.0), 10, 1.0).gamma_clamped);
  EXPECT_THROW(edge_parameters(3, 40, 0.0, 1.0, 10, 1.0), InvalidInput);
}

TEST(EdgeBandit, ExactPathProbabilitiesWithDoubledEdge) {
  const auto g = fixed(1, 2);
  std::vector<double> w(g->num_edges(), 1.0);
  w[*g->find_edge({0, 0}, {1, 1})] = 2.0;
  for (double gamma : {0.0, 0.4, 1.0}) {
    EdgeBandit bandit(g, gamma, 0.1, 1.0, w);
    const std::map<Allocation, double> weight_law{
        {Allocation{{0, 0}}, 0.25}, {Allocation{{0, 1}}, 0.25}, {Allocation{{1, 0}}, 0.5}};
    double total = 0.0;
    for (const auto& [a, q] : weight_law) {
      const double p = bandit.path_probability(allocation_to_path(*g, a));
      EXPECT_NEAR(p, (1.0 - gamma) * q + gamma / 3.0, 1e-12);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(EdgeBandit, SamplerUniformOnOriginalGraph) {
  const auto g = std::make_shared<const LayeredGraph>(LayeredGraph::original(4, 3));
  EdgeBandit bandit(g, 0.0, 0.1, 1.0);
  Rng rng(21);
  std::map<Allocation, int> counts;
  const int draws = 100'000;
  for (int i = 0; i < draws; ++i) ++counts[path_to_allocation(*g, bandit.sample_path(rng))];
  ASSERT_EQ(counts.size(), 15u);
  double tv = 0.0;
  for (const auto& [a, k] : counts) tv += std::abs(static_cast<double>(k) / draws - 1.0 / 15);
  EXPECT_LE(0.5 * tv, 0.01);
}

TEST(EdgeBandit, SamplerMatchesMixtureLaw) {
  const auto g = fixed(2, 3);
  Rng rng(22);
  EdgeBandit bandit(g, 0.5, 0.1, 1.0, random_weights(*g, rng));
  std::map<Allocation, int> counts;
  const int draws = 100'000;
  for (int i = 0; i < draws; ++i) ++counts[path_to_allocation(*g, bandit.sample_path(rng))];
  double tv = 0.0;
  for (const auto& p : enumerate_paths(*g)) {
    const double freq = static_cast<double>(counts[path_to_allocation(*g, p)]) / draws;
    tv += std::abs(freq - bandit.path_probability(p));
  }
  EXPECT_LE(0.5 * tv, 0.01);
}

TEST(Cooccurrence, UniformOnSmallGraphMatchesEnumeration) {
  const auto g = fixed(1, 2);
  EdgeBandit bandit(g, 0.0, 0.1, 1.0);
  const SymMatrix c = bandit.cooccurrence();
  for (int i = 0; i < g->num_edges(); ++i) {
    for (int j = 0; j < g->num_edges(); ++j) {
      double expected = 0.0;
      for (const auto& p : enumerate_paths(*g)) {
        if (p.contains(i) && p.contains(j)) expected += 1.0 / 3;
      }
      EXPECT_NEAR(c(i, j), expected, 1e-12);
    }
  }
}

TEST(Cooccurrence, WeightedMatchesPathDistribution) {
  const auto g = fixed(3, 3);
  Rng rng(23);
  EdgeBandit bandit(g, 0.3, 0.1, 1.0, random_weights(*g, rng));
  const SymMatrix c = bandit.cooccurrence();
  SymMatrix expected(g->num_edges());
  for (const auto& p : enumerate_paths(*g)) {
    const double q = bandit.path_probability(p);
    for (int i : p.edge_ids()) {
      for (int j : p.edge_ids()) {
        if (i <= j) expected.add(i, j, q);
      }
    }
  }
  for (int i = 0; i < g->num_edges(); ++i) {
    for (int j = 0; j < g->num_edges(); ++j) EXPECT_NEAR(c(i, j), expected(i, j), 1e-12);
  }
}

TEST(Estimator, SinglePathRecoversReward) {
  // With m = 0 the fixed graph has exactly one path.
  const auto g = fixed(0, 3);
  EdgeBandit bandit(g, 0.5, 0.1, 1.0);
  const PathVector u = enumerate_paths(*g).front();
  const auto lhat = bandit.estimate_loss(bandit.cooccurrence(), u, 1.0);
  double dot = 0.0;
  for (int e : u.edge_ids()) dot += lhat[e];
  EXPECT_NEAR(dot, 1.0, 1e-12);
}

TEST(Estimator, BoundHoldsOnEveryPathPair) {
  const auto g = fixed(3, 3);
  Rng rng(24);
  for (double gamma : {0.05, 0.3, 1.0}) {
    EdgeBandit bandit(g, gamma, 0.01, 1.0, random_weights(*g, rng));
    const SymMatrix c = bandit.cooccurrence();
    const SymMatrix c_pinv = pinv(c);
    const double bound = 3.0 / (gamma * bandit.exploration().lambda_star);
    const auto paths = enumerate_paths(*g);
    for (const auto& u : paths) {
      const auto lhat = bandit.estimate_loss_with_pinv(c_pinv, u, 1.0);
      for (const auto& v : paths) {
        double dot = 0.0;
        for (int e : v.edge_ids()) dot += lhat[e];
        EXPECT_LE(std::abs(dot), bound);
      }
      EXPECT_LE(bandit.max_abs_path_sum(lhat), bound);
    }
  }
}

TEST(Estimator, MaxAbsPathSumMatchesEnumeration) {
  const auto g = fixed(3, 2);
  Rng rng(25);
  EdgeBandit bandit(g, 0.5, 0.1, 1.0);
  std::vector<double> x(g->num_edges());
  for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
  double best = 0.0;
  for (const auto& p : enumerate_paths(*g)) {
    double dot = 0.0;
    for (int e : p.edge_ids()) dot += x[e];
    best = std::max(best, std::abs(dot));
  }
  EXPECT_NEAR(bandit.max_abs_path_sum(x), best, 1e-12);
}

TEST(Estimator, UnbiasedOnSmallGraph) {
  const auto g = fixed(1, 2);
  Rng rng(26);
  EdgeBandit bandit(g, 0.3, 0.1, 1.0, random_weights(*g, rng));
  const std::vector<double> truth{0.1, 0.4, 0.2, 0.05, 0.3, 0.15, 0.0};
  const SymMatrix c = bandit.cooccurrence();
  const SymMatrix c_pinv = pinv(c);
  const int rounds = 100'000;
  std::vector<double> sum(g->num_edges()), sum_sq(g->num_edges());
  for (int t = 0; t < rounds; ++t) {
    const PathVector u = bandit.sample_path(rng);
    double r = 0.0;
    for (int e : u.edge_ids()) r += truth[e];
    const auto lhat = bandit.estimate_loss_with_pinv(c_pinv, u, r);
    for (int e = 0; e < g->num_edges(); ++e) {
      sum[e] += lhat[e];
      sum_sq[e] += lhat[e] * lhat[e];
    }
  }
  const auto ct = c.multiply(truth);
  const auto target = c_pinv.multiply(ct);
  for (int e = 0; e < g->num_edges(); ++e) {
    const double mean = sum[e] / rounds;
    const double se = std::sqrt(std::max(0.0, sum_sq[e] / rounds - mean * mean) / rounds);
    EXPECT_LE(std::abs(mean - target[e]), std::max(3.0 * se, 1e-9)) << "edge " << e;
  }
}

TEST(Update, HandComputedWeights) {
  const auto g = fixed(1, 2);
  EdgeBandit bandit(g, 0.5, 0.2, 1.0);
  std::vector<double> lhat(g->num_edges());
  for (int e = 0; e < g->num_edges(); ++e) lhat[e] = 0.1 * (e + 1) - 0.3;
  bandit.update_weights(lhat);
  for (const auto& e : g->edges()) {
    const double expected = e.auxiliary() ? 1.0 : std::exp(0.2 * lhat[e.id]);
    EXPECT_NEAR(bandit.weights()[e.id], expected, 1e-15);
  }
}

TEST(Update, ZeroEtaLeavesWeights) {
  const auto g = fixed(2, 2);
  EdgeBandit bandit(g, 0.5, 0.0, 1.0);
  const std::vector<double> lhat(g->num_edges(), 3.0);
  bandit.update_weights(lhat);
  for (double w : bandit.weights()) EXPECT_EQ(w, 1.0);
}

TEST(Update, RescalingKeepsPathLaw) {
  const auto g = fixed(2, 3);
  EdgeBandit bandit(g, 0.2, 1.0, 1.0);
  const auto paths = enumerate_paths(*g);
  std::vector<double> lhat(g->num_edges(), 0.0);
  for (const auto& e : g->edges()) {
    if (e.battlefield == 0) lhat[e.id] = 300.0 + e.consumption;
  }
  EXPECT_TRUE(bandit.update_weights(lhat));
  // Battlefield-0 edges differ by factors e^1 and e^2 after the shift.
  const double p0 = bandit.path_probability(allocation_to_path(*g, Allocation{{0, 0, 0}}));
  const double p2 = bandit.path_probability(allocation_to_path(*g, Allocation{{2, 0, 0}}));
  const double weight_part0 = (p0 - 0.2 / paths.size()) / 0.8;
  const double weight_part2 = (p2 - 0.2 / paths.size()) / 0.8;
  EXPECT_NEAR(weight_part2 / weight_part0, std::exp(2.0), 1e-9);
}

TEST(EdgeBandit, RejectsBadArguments) {
  const auto g = fixed(1, 2);
  EXPECT_THROW(EdgeBandit(g, 1.5, 0.1, 1.0), InvalidInput);
  EXPECT_THROW(EdgeBandit(g, 0.5, -0.1, 1.0), InvalidInput);
  std::vector<double> w(g->num_edges(), 2.0);
  EXPECT_THROW(EdgeBandit(g, 0.5, 0.1, 1.0, w), InvalidInput);
}

}  // namespace
}  // namespace blotto
