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

#include "blotto/validation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include <fmt/format.h>

#include "blotto/edge_bandit.hpp"
#include "blotto/errors.hpp"
#include "blotto/layered_graph.hpp"
#include "blotto/numerics.hpp"
#include "blotto/rng.hpp"

namespace blotto {

namespace {

constexpr std::size_t kMaxValidationPaths = 200;

std::vector<double> random_weights(const LayeredGraph& g, Rng& rng) {
  std::vector<double> w(g.num_edges(), 1.0);
  for (const GraphEdge& e : g.edges()) {
    if (!e.auxiliary()) w[e.id] = 0.5 + 1.5 * rng.uniform();
  }
  return w;
}

SymMatrix enumerated_moment(const std::vector<PathVector>& paths,
                            const std::vector<double>& probs) {
  const std::size_t dim = paths.front().size();
  SymMatrix c(dim);
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const std::vector<int> ids = paths[k].edge_ids();
    for (int a : ids) {
      for (int b : ids) {
        if (a <= b) c.add(a, b, probs[k]);
      }
    }
  }
  return c;
}

}  // namespace

std::vector<CheckResult> run_validation(int m, int n, std::int64_t samples,
                                        std::uint64_t seed) {
  auto graph = std::make_shared<const LayeredGraph>(LayeredGraph::fixed_set(m, n));
  const std::vector<PathVector> paths = enumerate_paths(*graph, kMaxValidationPaths);
  std::map<std::vector<std::uint8_t>, std::size_t> index;
  for (std::size_t k = 0; k < paths.size(); ++k) index[paths[k].bits()] = k;

  Rng rng(seed);
  const std::vector<double> weights = random_weights(*graph, rng);
  std::vector<CheckResult> checks;
  const int dim = graph->num_edges();

  for (double gamma : {0.0, 0.3, 1.0}) {
    const EdgeBandit bandit(graph, gamma, 0.0, 1.0, weights);
    std::vector<double> exact(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) exact[k] = bandit.path_probability(paths[k]);

    std::vector<double> counts(paths.size(), 0.0);
    SymMatrix empirical(dim);
    for (std::int64_t s = 0; s < samples; ++s) {
      const PathVector p = bandit.sample_path(rng);
      counts[index.at(p.bits())] += 1.0;
    }
    double tv = 0.0;
    for (std::size_t k = 0; k < paths.size(); ++k) {
      tv += std::abs(counts[k] / static_cast<double>(samples) - exact[k]);
      for (int a : paths[k].edge_ids()) {
        for (int b : paths[k].edge_ids()) {
          if (a <= b) empirical.add(a, b, counts[k] / static_cast<double>(samples));
        }
      }
    }
    tv *= 0.5;
    checks.push_back({fmt::format("sampler law (gamma={})", gamma), tv <= 0.01,
                      fmt::format("total variation {:.5f} <= 0.01", tv)});

    const SymMatrix c = bandit.cooccurrence();
    const SymMatrix reference = enumerated_moment(paths, exact);
    double exact_gap = 0.0;
    double mc_gap = 0.0;
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        exact_gap = std::max(exact_gap, std::abs(c(a, b) - reference(a, b)));
        mc_gap = std::max(mc_gap, std::abs(c(a, b) - empirical(a, b)));
      }
    }
    checks.push_back({fmt::format("co-occurrence vs enumeration (gamma={})", gamma),
                      exact_gap <= 1e-12,
                      fmt::format("max entry gap {:.3e} <= 1e-12", exact_gap)});
    checks.push_back({fmt::format("co-occurrence vs Monte-Carlo (gamma={})", gamma),
                      mc_gap <= 0.01, fmt::format("max entry gap {:.5f} <= 0.01", mc_gap)});
  }

  // Estimator: fixed per-edge rewards l, reward l^T u on the sampled path.
  {
    const double gamma = 0.3;
    const EdgeBandit bandit(graph, gamma, 0.0, 1.0, weights);
    std::vector<double> l(dim);
    for (double& v : l) v = rng.uniform();
    const SymMatrix c = bandit.cooccurrence();
    const SymMatrix c_pinv = pinv(c);
    const std::vector<double> expected = c_pinv.multiply(c.multiply(l));
    std::vector<double> mean(dim, 0.0);
    std::vector<double> sq(dim, 0.0);
    double worst_path_estimate = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
      const PathVector u = bandit.sample_path(rng);
      double r = 0.0;
      for (int e : u.edge_ids()) r += l[e];
      const std::vector<double> lhat = bandit.estimate_loss_with_pinv(c_pinv, u, r);
      for (int e = 0; e < dim; ++e) {
        mean[e] += lhat[e];
        sq[e] += lhat[e] * lhat[e];
      }
      worst_path_estimate = std::max(worst_path_estimate, bandit.max_abs_path_sum(lhat) / std::max(r, 1e-300));
    }
    const double count = static_cast<double>(samples);
    double worst_z = 0.0;
    bool ok = true;
    for (int e = 0; e < dim; ++e) {
      mean[e] /= count;
      const double var = std::max(sq[e] / count - mean[e] * mean[e], 0.0);
      const double se = std::sqrt(var * count / (count - 1.0) / count);
      const double gap = std::abs(mean[e] - expected[e]);
      if (gap > std::max(3.0 * se, 1e-9)) ok = false;
      if (se > 0.0) worst_z = std::max(worst_z, gap / se);
    }
    checks.push_back({"estimator mean vs pinv(C) C l", ok,
                      fmt::format("worst deviation {:.3f} standard errors <= 3", worst_z)});
    const double bound = n / (gamma * bandit.exploration().lambda_star);
    checks.push_back({"estimate bound |lhat^T u| <= r n / (gamma lambda*)",
                      worst_path_estimate <= bound * (1.0 + 1e-9),
                      fmt::format("max |lhat^T u| / r = {:.4f}, bound {:.4f}",
                                  worst_path_estimate, bound)});
  }
  return checks;
}

}  // namespace blotto
