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

// Combinatorial path bandit over a layered graph: paths are drawn from a
// mixture of the weight-induced law and a uniform exploration law, the
// observed path reward is spread over edges through the pseudoinverse of the
// exact co-occurrence matrix, and edge weights grow as exp(eta * estimate).
// Rewards are maximized.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "blotto/layered_graph.hpp"
#include "blotto/numerics.hpp"
#include "blotto/rng.hpp"

namespace blotto {

// E_{u ~ p}[u u^T] for the law p(u) proportional to the product of edge
// weights along u, computed exactly from forward/backward and node-pair sums.
SymMatrix cooccurrence_matrix(const LayeredGraph& g,
                              std::span<const double> edge_weights);

// Uniform law over all s,d-paths, with its co-occurrence matrix M(mu) and
// smallest nonzero eigenvalue lambda*.
struct ExplorationDist {
  static ExplorationDist uniform(const LayeredGraph& g);

  SymMatrix moment;
  double lambda_star = 0.0;
  PathCount paths;
  ForwardBackward counts;  // unit-weight sums, used for sampling
};

struct EdgeParameters {
  int battlefields = 0;
  int num_edges = 0;
  std::int64_t horizon = 0;
  double lambda_star = 0.0;
  double log_paths = 0.0;
  double reward_scale = 1.0;
  double gamma_raw = 0.0;  // closed form before clamping
  bool gamma_clamped = false;
  double gamma = 0.0;
  double eta = 0.0;
};

// With root = sqrt(ln S / ((n / (E lambda*) + 1) E T^(2/3))):
//   gamma = (n / lambda*) root, clamped to 1,
//   eta   = gamma lambda* / (reward_scale n),
// which is root / reward_scale whenever gamma is not clamped.
EdgeParameters edge_parameters(int n, int num_edges, double lambda_star,
                               double log_paths, std::int64_t horizon,
                               double reward_scale);

// Per-round learning diagnostics.
struct EdgeUpdate {
  double max_abs_estimate = 0.0;       // max_e |lhat_e|
  double max_abs_path_estimate = 0.0;  // max over paths u of |lhat^T u|
  double estimate_bound = 0.0;         // reward_scale n / (gamma lambda*)
  bool bound_violated = false;
  double eta_path_estimate = 0.0;      // eta * max_abs_path_estimate
  double max_weight = 0.0;
  bool rescaled = false;
};

class EdgeBandit {
 public:
  // Rates from edge_parameters() with uniform exploration.
  EdgeBandit(std::shared_ptr<const LayeredGraph> graph, std::int64_t horizon,
             double reward_scale);
  // Explicit rates. `weights` defaults to all ones; auxiliary entries must be 1.
  EdgeBandit(std::shared_ptr<const LayeredGraph> graph, double gamma, double eta,
             double reward_scale, std::vector<double> weights = {});

  const LayeredGraph& graph() const { return *graph_; }
  std::shared_ptr<const LayeredGraph> graph_ptr() const { return graph_; }
  const EdgeParameters& parameters() const { return params_; }
  double gamma() const { return params_.gamma; }
  double eta() const { return params_.eta; }
  const ExplorationDist& exploration() const { return exploration_; }
  std::span<const double> weights() const { return weights_; }
  void set_weights(std::vector<double> weights);
  std::int64_t rounds() const { return rounds_; }

  // Exact probability of p under (1 - gamma) * weight law + gamma * mu.
  double path_probability(const PathVector& p) const;

  // Bernoulli(gamma) picks the component; the path is then drawn edge by edge
  // from s with P(e = v -> v') proportional to w_e * backward(v').
  PathVector sample_path(Rng& rng) const;

  // C_t = E_{u ~ p_t}[u u^T].
  SymMatrix cooccurrence() const;

  // lhat = reward * pinv(C) u. Entries on auxiliary edges are computed but
  // never used for updates.
  std::vector<double> estimate_loss(const SymMatrix& cooccurrence,
                                    const PathVector& u, double reward) const;
  std::vector<double> estimate_loss_with_pinv(const SymMatrix& cooccurrence_pinv,
                                              const PathVector& u,
                                              double reward) const;

  // w_e <- w_e exp(eta lhat_e) on non-auxiliary edges. Throws NumericalFailure
  // on a non-finite weight. Returns true if the weights were rescaled.
  bool update_weights(std::span<const double> lhat);

  // One learning step for the played path u and its reward: co-occurrence,
  // estimate, bound checks and weight update.
  EdgeUpdate learn(const PathVector& u, double reward);

  // max over s,d-paths of |x^T u|, by a longest/shortest path pass.
  double max_abs_path_sum(std::span<const double> x) const;

 private:
  void check_weights(std::span<const double> weights) const;
  bool rescale_if_needed();

  std::shared_ptr<const LayeredGraph> graph_;
  ExplorationDist exploration_;
  EdgeParameters params_;
  std::vector<double> weights_;
  std::int64_t rounds_ = 0;
};

}  // namespace blotto
