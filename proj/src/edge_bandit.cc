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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "blotto/errors.hpp"

namespace blotto {

namespace {

// Tolerance of the per-round estimate bound checks.
constexpr double kBoundSlack = 1e-9;
constexpr double kMinWeight = 1e-300;

double exact_or_log_count(const PathCount& count) {
  return count.saturated ? std::exp(count.log_count)
                         : static_cast<double>(count.exact);
}

PathVector sample_by_backward(const LayeredGraph& g, std::span<const double> w,
                              std::span<const double> backward, Rng& rng) {
  PathVector path(g.num_edges());
  int node = g.source();
  while (node != g.destination()) {
    const auto& out = g.out_edges(node);
    double total = 0.0;
    for (int e : out) total += w[e] * backward[g.edge(e).to];
    const double draw = rng.uniform() * total;
    double cumulative = 0.0;
    int chosen = -1;
    for (int e : out) {
      const double mass = w[e] * backward[g.edge(e).to];
      if (mass <= 0.0) continue;
      chosen = e;
      cumulative += mass;
      if (draw < cumulative) break;
    }
    if (chosen < 0) throw InternalError("sampling reached a dead-end node");
    path.set(chosen);
    node = g.edge(chosen).to;
  }
  return path;
}

}  // namespace

SymMatrix cooccurrence_matrix(const LayeredGraph& g,
                              std::span<const double> edge_weights) {
  const ForwardBackward fb = forward_backward(g, edge_weights);
  const NodePairSums pairs = node_pair_sums(g, edge_weights);
  const int num_edges = g.num_edges();
  if (!(fb.total > 0.0) || !std::isfinite(fb.total)) {
    throw NumericalFailure(fmt::format("total path weight is {}", fb.total));
  }
  const double inv_total = 1.0 / fb.total;
  SymMatrix c(num_edges);
  // Edge ids run in layer order, so e < f leaves f at or after e's layer.
  // Distinct edges of one layer never share a path: pairs(b, c) is zero there.
  for (int e = 0; e < num_edges; ++e) {
    const GraphEdge& ee = g.edge(e);
    const double head = fb.forward[ee.from] * edge_weights[e];
    if (head == 0.0) continue;
    c.set(e, e, head * fb.backward[ee.to] * inv_total);
    for (int f = e + 1; f < num_edges; ++f) {
      const GraphEdge& ff = g.edge(f);
      const double link = pairs(ee.to, ff.from);
      if (link == 0.0) continue;
      c.set(e, f, head * link * edge_weights[f] * fb.backward[ff.to] * inv_total);
    }
  }
  return c;
}

ExplorationDist ExplorationDist::uniform(const LayeredGraph& g) {
  const std::vector<double> ones(g.num_edges(), 1.0);
  ExplorationDist mu;
  mu.moment = cooccurrence_matrix(g, ones);
  mu.lambda_star = smallest_nonzero_eig(mu.moment);
  mu.paths = count_paths(g);
  mu.counts = forward_backward(g, ones);
  return mu;
}

EdgeParameters edge_parameters(int n, int num_edges, double lambda_star,
                               double log_paths, std::int64_t horizon,
                               double reward_scale) {
  if (horizon < 1) throw InvalidInput("horizon must be at least 1");
  if (!(lambda_star > 0.0)) throw InvalidInput("lambda* must be positive");
  if (!(reward_scale > 0.0)) throw InvalidInput("reward scale must be positive");
  EdgeParameters p;
  p.battlefields = n;
  p.num_edges = num_edges;
  p.horizon = horizon;
  p.lambda_star = lambda_star;
  p.log_paths = log_paths;
  p.reward_scale = reward_scale;

  const double e = static_cast<double>(num_edges);
  const double t23 = std::cbrt(static_cast<double>(horizon) * static_cast<double>(horizon));
  const double root =
      std::sqrt(log_paths / ((n / (e * lambda_star) + 1.0) * e * t23));
  p.gamma_raw = n / lambda_star * root;
  p.gamma_clamped = p.gamma_raw > 1.0;
  p.gamma = std::min(p.gamma_raw, 1.0);
  // Keeps eta (n / lambda*) reward_scale = gamma, also after clamping.
  p.eta = p.gamma * lambda_star / (reward_scale * n);
  return p;
}

EdgeBandit::EdgeBandit(std::shared_ptr<const LayeredGraph> graph,
                       std::int64_t horizon, double reward_scale)
    : graph_(std::move(graph)),
      exploration_(ExplorationDist::uniform(*graph_)),
      weights_(graph_->num_edges(), 1.0) {
  params_ = edge_parameters(graph_->battlefields(), graph_->num_edges(),
                            exploration_.lambda_star,
                            exploration_.paths.log_count, horizon, reward_scale);
}

EdgeBandit::EdgeBandit(std::shared_ptr<const LayeredGraph> graph, double gamma,
                       double eta, double reward_scale, std::vector<double> weights)
    : graph_(std::move(graph)), exploration_(ExplorationDist::uniform(*graph_)) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidInput("gamma must lie in [0,1]");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw InvalidInput("eta must be >= 0");
  params_.battlefields = graph_->battlefields();
  params_.num_edges = graph_->num_edges();
  params_.lambda_star = exploration_.lambda_star;
  params_.log_paths = exploration_.paths.log_count;
  params_.reward_scale = reward_scale;
  params_.gamma_raw = gamma;
  params_.gamma = gamma;
  params_.eta = eta;
  if (weights.empty()) weights.assign(graph_->num_edges(), 1.0);
  set_weights(std::move(weights));
}

void EdgeBandit::check_weights(std::span<const double> weights) const {
  if (static_cast<int>(weights.size()) != graph_->num_edges()) {
    throw InvalidInput(fmt::format("expected {} edge weights, got {}",
                                   graph_->num_edges(), weights.size()));
  }
  for (const GraphEdge& e : graph_->edges()) {
    const double w = weights[e.id];
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidInput(fmt::format("edge {} has weight {}", e.id, w));
    }
    if (e.auxiliary() && w != 1.0) {
      throw InvalidInput(fmt::format("auxiliary edge {} must keep weight 1", e.id));
    }
  }
}

void EdgeBandit::set_weights(std::vector<double> weights) {
  check_weights(weights);
  weights_ = std::move(weights);
}

double EdgeBandit::path_probability(const PathVector& p) const {
  const ForwardBackward fb = forward_backward(*graph_, weights_);
  double product = 1.0;
  for (int e : p.edge_ids()) product *= weights_[e];
  const double uniform = 1.0 / exact_or_log_count(exploration_.paths);
  return (1.0 - gamma()) * product / fb.total + gamma() * uniform;
}

PathVector EdgeBandit::sample_path(Rng& rng) const {
  const bool explore = rng.bernoulli(gamma());
  if (explore) {
    const std::vector<double> ones(graph_->num_edges(), 1.0);
    return sample_by_backward(*graph_, ones, exploration_.counts.backward, rng);
  }
  const ForwardBackward fb = forward_backward(*graph_, weights_);
  return sample_by_backward(*graph_, weights_, fb.backward, rng);
}

SymMatrix EdgeBandit::cooccurrence() const {
  SymMatrix c = cooccurrence_matrix(*graph_, weights_);
  c *= 1.0 - gamma();
  SymMatrix explore = exploration_.moment;
  explore *= gamma();
  c += explore;
  return c;
}

std::vector<double> EdgeBandit::estimate_loss(const SymMatrix& cooccurrence,
                                              const PathVector& u,
                                              double reward) const {
  return estimate_loss_with_pinv(pinv(cooccurrence), u, reward);
}

std::vector<double> EdgeBandit::estimate_loss_with_pinv(
    const SymMatrix& cooccurrence_pinv, const PathVector& u, double reward) const {
  if (u.size() != graph_->num_edges() ||
      static_cast<int>(cooccurrence_pinv.dim()) != graph_->num_edges()) {
    throw InvalidInput("estimate dimensions do not match the graph");
  }
  std::vector<double> estimate = cooccurrence_pinv.multiply(u.as_real());
  for (double& v : estimate) v *= reward;
  return estimate;
}

bool EdgeBandit::update_weights(std::span<const double> lhat) {
  if (static_cast<int>(lhat.size()) != graph_->num_edges()) {
    throw InvalidInput("estimate has the wrong dimension");
  }
  for (const GraphEdge& e : graph_->edges()) {
    if (e.auxiliary()) continue;
    const double w = weights_[e.id] * std::exp(eta() * lhat[e.id]);
    if (!std::isfinite(w)) {
      throw NumericalFailure(fmt::format(
          "edge {} weight became {} (estimate {})", e.id, w, lhat[e.id]));
    }
    weights_[e.id] = std::max(w, kMinWeight);
  }
  return rescale_if_needed();
}

bool EdgeBandit::rescale_if_needed() {
  // Every path uses exactly one edge per battlefield, so dividing all edges of
  // one battlefield by a constant leaves p_t unchanged. Bounds keep the
  // product over n battlefields within 1e+-200.
  const int n = graph_->battlefields();
  const double upper = std::pow(10.0, 200.0 / n);
  const double lower = 1.0 / upper;
  std::vector<double> layer_max(n, 0.0);
  for (const GraphEdge& e : graph_->edges()) {
    if (!e.auxiliary()) {
      layer_max[e.battlefield] = std::max(layer_max[e.battlefield], weights_[e.id]);
    }
  }
  bool rescaled = false;
  for (int i = 0; i < n; ++i) {
    if (layer_max[i] <= upper && layer_max[i] >= lower) continue;
    rescaled = true;
    for (const GraphEdge& e : graph_->edges()) {
      if (e.battlefield == i) {
        weights_[e.id] = std::max(weights_[e.id] / layer_max[i], kMinWeight);
      }
    }
  }
  return rescaled;
}

double EdgeBandit::max_abs_path_sum(std::span<const double> x) const {
  const LayeredGraph& g = *graph_;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> hi(g.num_nodes(), -inf);
  std::vector<double> lo(g.num_nodes(), inf);
  hi[g.source()] = 0.0;
  lo[g.source()] = 0.0;
  for (const GraphEdge& e : g.edges()) {
    if (hi[e.from] == -inf) continue;
    hi[e.to] = std::max(hi[e.to], hi[e.from] + x[e.id]);
    lo[e.to] = std::min(lo[e.to], lo[e.from] + x[e.id]);
  }
  const int d = g.destination();
  return std::max(std::abs(hi[d]), std::abs(lo[d]));
}

EdgeUpdate EdgeBandit::learn(const PathVector& u, double reward) {
  const SymMatrix c = cooccurrence();
  const std::vector<double> lhat = estimate_loss(c, u, reward);

  EdgeUpdate update;
  for (double v : lhat) update.max_abs_estimate = std::max(update.max_abs_estimate, std::abs(v));
  update.max_abs_path_estimate = max_abs_path_sum(lhat);
  update.estimate_bound =
      gamma() > 0.0 ? params_.reward_scale * graph_->battlefields() /
                          (gamma() * exploration_.lambda_star)
                    : std::numeric_limits<double>::infinity();
  update.bound_violated =
      update.max_abs_path_estimate > update.estimate_bound * (1.0 + kBoundSlack);
  update.eta_path_estimate = eta() * update.max_abs_path_estimate;

  update.rescaled = update_weights(lhat);
  update.max_weight = *std::max_element(weights_.begin(), weights_.end());
  ++rounds_;
  return update;
}

}  // namespace blotto
