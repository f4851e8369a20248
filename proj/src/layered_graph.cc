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

#include "blotto/layered_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "blotto/errors.hpp"

namespace blotto {

namespace {

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

std::vector<int> index_range(int last) {
  std::vector<int> out(last + 1);
  for (int j = 0; j <= last; ++j) out[j] = j;
  return out;
}

// Layer index sets of the Original/Reduced shape with cap `top`.
std::vector<std::vector<int>> original_layers(int top, int n) {
  std::vector<std::vector<int>> layers;
  layers.push_back({0});
  for (int i = 1; i < n; ++i) layers.push_back(index_range(top));
  layers.push_back({top});
  return layers;
}

void check_weights(const LayeredGraph& g, std::span<const double> w) {
  if (static_cast<int>(w.size()) != g.num_edges()) {
    throw InvalidInput(fmt::format("expected {} edge weights, got {}",
                                   g.num_edges(), w.size()));
  }
}

}  // namespace

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kOriginal:
      return "original";
    case GraphKind::kFixedSet:
      return "fixed";
    case GraphKind::kReduced:
      return "reduced";
  }
  return "unknown";
}

LayeredGraph::LayeredGraph(GraphKind kind, int cap, int n,
                           std::vector<std::vector<int>> layer_indices)
    : kind_(kind), cap_(cap), n_(n) {
  for (int layer = 0; layer < static_cast<int>(layer_indices.size()); ++layer) {
    std::vector<int> ids;
    for (int index : layer_indices[layer]) {
      ids.push_back(static_cast<int>(nodes_.size()));
      nodes_.push_back({layer, index});
    }
    layers_.push_back(std::move(ids));
  }
  out_.resize(nodes_.size());
  in_.resize(nodes_.size());

  auto add_edge = [this](int from, int to, int battlefield, int consumption) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({id, from, to, battlefield, consumption});
    out_[from].push_back(id);
    in_[to].push_back(id);
  };

  for (int layer = 1; layer <= n_; ++layer) {
    for (int from : layers_[layer - 1]) {
      for (int to : layers_[layer]) {
        const int spend = nodes_[to].index - nodes_[from].index;
        if (spend >= 0) add_edge(from, to, layer - 1, spend);
      }
    }
  }
  if (kind_ == GraphKind::kFixedSet) {
    const int sink = layers_.back().front();
    for (int from : layers_[n_]) {
      add_edge(from, sink, GraphEdge::kAuxiliary, 0);
    }
  }
}

LayeredGraph LayeredGraph::original(int m, int n) {
  if (m < 0) throw InvalidInput("graph cap m must be nonnegative");
  if (n < 1) throw InvalidInput("graph needs at least one battlefield");
  return LayeredGraph(GraphKind::kOriginal, m, n, original_layers(m, n));
}

LayeredGraph LayeredGraph::fixed_set(int m, int n) {
  if (m < 0) throw InvalidInput("graph cap m must be nonnegative");
  if (n < 1) throw InvalidInput("graph needs at least one battlefield");
  std::vector<std::vector<int>> layers;
  layers.push_back({0});
  for (int i = 1; i <= n; ++i) layers.push_back(index_range(m));
  layers.push_back({0});
  return LayeredGraph(GraphKind::kFixedSet, m, n, std::move(layers));
}

LayeredGraph LayeredGraph::reduced(int x, int n) {
  if (x < 0) throw InvalidInput("remaining budget x must be nonnegative");
  if (n < 1) throw InvalidInput("graph needs at least one battlefield");
  return LayeredGraph(GraphKind::kReduced, x, n, original_layers(x, n));
}

std::optional<int> LayeredGraph::find_node(NodeCoord coord) const {
  if (coord.layer < 0 || coord.layer >= num_layers()) return std::nullopt;
  for (int id : layers_[coord.layer]) {
    if (nodes_[id].index == coord.index) return id;
  }
  return std::nullopt;
}

std::optional<int> LayeredGraph::find_edge(NodeCoord from, NodeCoord to) const {
  const auto source = find_node(from);
  if (!source) return std::nullopt;
  for (int e : out_[*source]) {
    if (nodes_[edges_[e].to] == to) return e;
  }
  return std::nullopt;
}

PathVector PathVector::from_edges(int num_edges, std::span<const int> edge_ids) {
  PathVector p(num_edges);
  for (int e : edge_ids) {
    if (e < 0 || e >= num_edges) throw InvalidInput("edge id out of range");
    p.set(e);
  }
  return p;
}

int PathVector::count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<int> PathVector::edge_ids() const {
  std::vector<int> ids;
  for (int e = 0; e < size(); ++e) {
    if (bits_[e]) ids.push_back(e);
  }
  return ids;
}

std::vector<double> PathVector::as_real() const {
  return std::vector<double>(bits_.begin(), bits_.end());
}

Allocation path_to_allocation(const LayeredGraph& g, const PathVector& p) {
  if (p.size() != g.num_edges()) {
    throw InvalidInput(fmt::format("path vector has {} entries, graph has {} edges",
                                   p.size(), g.num_edges()));
  }
  Allocation a;
  a.troops.assign(g.battlefields(), 0);
  int node = g.source();
  int steps = 0;
  while (node != g.destination()) {
    int chosen = -1;
    for (int e : g.out_edges(node)) {
      if (!p.contains(e)) continue;
      if (chosen >= 0) {
        throw InvalidInput("path vector branches: two selected edges leave one node");
      }
      chosen = e;
    }
    if (chosen < 0) {
      throw InvalidInput("path vector is disconnected: no selected edge leaves a reached node");
    }
    const GraphEdge& edge = g.edge(chosen);
    if (!edge.auxiliary()) a.troops[edge.battlefield] = edge.consumption;
    node = edge.to;
    ++steps;
  }
  if (steps != p.count()) {
    throw InvalidInput("path vector selects edges off the s,d-path");
  }
  return a;
}

PathVector allocation_to_path(const LayeredGraph& g, const Allocation& u) {
  if (u.size() != g.battlefields()) {
    throw InvalidInput(fmt::format("allocation has {} entries, graph has {} battlefields",
                                   u.size(), g.battlefields()));
  }
  PathVector p(g.num_edges());
  int used = 0;
  for (int i = 0; i < g.battlefields(); ++i) {
    if (u.troops[i] < 0) throw InvalidInput("allocation has a negative entry");
    const auto e = g.find_edge({i, used}, {i + 1, used + u.troops[i]});
    if (!e) {
      throw InvalidInput(fmt::format("allocation {} is not a path of the {} graph with cap {}",
                                     to_string(u), to_string(g.kind()), g.cap()));
    }
    p.set(*e);
    used += u.troops[i];
  }
  if (g.kind() == GraphKind::kFixedSet) {
    const auto e = g.find_edge({g.battlefields(), used}, g.node(g.destination()));
    if (!e) throw InternalError("missing auxiliary edge");
    p.set(*e);
  }
  return p;
}

PathCount count_paths(const LayeredGraph& g) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> count(g.num_nodes(), 0);
  std::vector<bool> saturated(g.num_nodes(), false);
  std::vector<double> log_count(g.num_nodes(), neg_inf);
  count[g.source()] = 1;
  log_count[g.source()] = 0.0;
  for (const GraphEdge& e : g.edges()) {
    std::uint64_t sum = 0;
    if (__builtin_add_overflow(count[e.to], count[e.from], &sum) ||
        saturated[e.from]) {
      saturated[e.to] = true;
      count[e.to] = std::numeric_limits<std::uint64_t>::max();
    } else {
      count[e.to] = sum;
    }
    log_count[e.to] = log_add(log_count[e.to], log_count[e.from]);
  }
  const int d = g.destination();
  return PathCount{count[d], saturated[d], log_count[d]};
}

ForwardBackward forward_backward(const LayeredGraph& g,
                                 std::span<const double> edge_weights) {
  check_weights(g, edge_weights);
  ForwardBackward fb;
  fb.forward.assign(g.num_nodes(), 0.0);
  fb.backward.assign(g.num_nodes(), 0.0);
  fb.forward[g.source()] = 1.0;
  fb.backward[g.destination()] = 1.0;
  // Edge ids are sorted by source layer, so one pass in each direction
  // visits every node after all of its predecessors (successors).
  const auto& edges = g.edges();
  for (const GraphEdge& e : edges) {
    fb.forward[e.to] += fb.forward[e.from] * edge_weights[e.id];
  }
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
    fb.backward[it->from] += edge_weights[it->id] * fb.backward[it->to];
  }
  fb.total = fb.forward[g.destination()];
  return fb;
}

NodePairSums node_pair_sums(const LayeredGraph& g,
                            std::span<const double> edge_weights) {
  check_weights(g, edge_weights);
  NodePairSums sums(g.num_nodes());
  for (int a = 0; a < g.num_nodes(); ++a) {
    sums.at(a, a) = 1.0;
    const int layer = g.node(a).layer;
    for (const GraphEdge& e : g.edges()) {
      if (g.node(e.from).layer < layer) continue;
      const double reach = sums(a, e.from);
      if (reach != 0.0) sums.at(a, e.to) += reach * edge_weights[e.id];
    }
  }
  return sums;
}

std::vector<PathVector> enumerate_paths(const LayeredGraph& g, std::size_t limit) {
  std::vector<PathVector> paths;
  std::vector<int> stack;
  // Depth-first over out-edges in id order yields lexicographic order.
  auto visit = [&](auto&& self, int node) -> void {
    if (node == g.destination()) {
      if (paths.size() >= limit) {
        throw SizeLimitExceeded(fmt::format("more than {} paths", limit));
      }
      paths.push_back(PathVector::from_edges(g.num_edges(), stack));
      return;
    }
    for (int e : g.out_edges(node)) {
      stack.push_back(e);
      self(self, g.edge(e).to);
      stack.pop_back();
    }
  };
  visit(visit, g.source());
  return paths;
}

std::vector<double> carry_weights(const LayeredGraph& from,
                                  std::span<const double> from_weights,
                                  const LayeredGraph& to) {
  check_weights(from, from_weights);
  std::vector<double> weights(to.num_edges(), 1.0);
  for (const GraphEdge& e : to.edges()) {
    const auto match = from.find_edge(to.node(e.from), to.node(e.to));
    if (match) weights[e.id] = from_weights[*match];
  }
  return weights;
}

std::string export_edge_list(const LayeredGraph& g) {
  std::string out;
  for (const GraphEdge& e : g.edges()) {
    const NodeCoord& a = g.node(e.from);
    const NodeCoord& b = g.node(e.to);
    out += fmt::format("{} {} {} {} {} {}\n", e.id, a.layer, a.index, b.layer,
                       b.index,
                       e.auxiliary() ? std::string("AUX") : std::to_string(e.battlefield));
  }
  return out;
}

}  // namespace blotto
