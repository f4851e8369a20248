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

// Layered path-planning graphs whose s,d-paths are in bijection with troop
// allocations. Node (i, j) means "j troops used after battlefield i"; an edge
// (i-1, j) -> (i, j') assigns j' - j troops to battlefield i.
//
// Three shapes are supported:
//   Original  G_{m,n}:   layers 0..n, d = (n, m); allocations summing to m.
//   FixedSet  G_{m,n+1}: layers 0..n+1, every node of layer n joined to the
//                        dummy node d = (n+1, 0) by an auxiliary edge;
//                        allocations summing to at most m.
//   Reduced:             Original shape with m replaced by the remaining
//                        budget x; allocations summing to exactly x.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blotto/game_core.hpp"

namespace blotto {

enum class GraphKind { kOriginal, kFixedSet, kReduced };

std::string to_string(GraphKind kind);

struct NodeCoord {
  int layer = 0;
  int index = 0;

  friend bool operator==(const NodeCoord&, const NodeCoord&) = default;
  friend auto operator<=>(const NodeCoord&, const NodeCoord&) = default;
};

struct GraphEdge {
  static constexpr int kAuxiliary = -1;

  int id = 0;
  int from = 0;  // node id
  int to = 0;    // node id
  int battlefield = kAuxiliary;  // 0-based, or kAuxiliary
  int consumption = 0;           // target index - source index

  bool auxiliary() const { return battlefield == kAuxiliary; }
};

class LayeredGraph {
 public:
  // Node ids follow (layer, index) order, so they are a topological order.
  // Edge ids follow (source layer, source index, target index) order.
  static LayeredGraph original(int m, int n);
  static LayeredGraph fixed_set(int m, int n);
  static LayeredGraph reduced(int x, int n);

  GraphKind kind() const { return kind_; }
  int battlefields() const { return n_; }
  // m for Original and FixedSet graphs, x for Reduced graphs.
  int cap() const { return cap_; }

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_layers() const { return static_cast<int>(layers_.size()); }

  const NodeCoord& node(int id) const { return nodes_[id]; }
  const GraphEdge& edge(int id) const { return edges_[id]; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<int>& layer_nodes(int layer) const { return layers_[layer]; }
  const std::vector<int>& out_edges(int node) const { return out_[node]; }
  const std::vector<int>& in_edges(int node) const { return in_[node]; }

  int source() const { return 0; }
  int destination() const { return num_nodes() - 1; }

  // Edges on every s,d-path: n, or n + 1 with the auxiliary edge.
  int path_length() const {
    return kind_ == GraphKind::kFixedSet ? n_ + 1 : n_;
  }

  std::optional<int> find_node(NodeCoord coord) const;
  std::optional<int> find_edge(NodeCoord from, NodeCoord to) const;

 private:
  LayeredGraph(GraphKind kind, int cap, int n,
               std::vector<std::vector<int>> layer_indices);

  GraphKind kind_;
  int cap_;
  int n_;
  std::vector<NodeCoord> nodes_;
  std::vector<std::vector<int>> layers_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// 0/1 characteristic vector of a path over edge ids.
class PathVector {
 public:
  PathVector() = default;
  explicit PathVector(int num_edges) : bits_(num_edges, 0) {}
  static PathVector from_edges(int num_edges, std::span<const int> edge_ids);

  int size() const { return static_cast<int>(bits_.size()); }
  bool contains(int edge) const { return bits_[edge] != 0; }
  void set(int edge, bool on = true) { bits_[edge] = on ? 1 : 0; }
  int count() const;

  std::vector<int> edge_ids() const;
  std::vector<double> as_real() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const PathVector&, const PathVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Throws InvalidInput unless p selects exactly one connected s,d-path.
Allocation path_to_allocation(const LayeredGraph& g, const PathVector& p);
// Throws InvalidInput if u has no path in g.
PathVector allocation_to_path(const LayeredGraph& g, const Allocation& u);

struct PathCount {
  std::uint64_t exact = 0;
  bool saturated = false;  // exact count exceeded uint64
  double log_count = 0.0;  // natural log, computed in the log domain
};

PathCount count_paths(const LayeredGraph& g);

// Weighted path sums: forward[v] sums s->v path products, backward[v] sums
// v->d path products; total = forward[d] = backward[s].
struct ForwardBackward {
  std::vector<double> forward;
  std::vector<double> backward;
  double total = 0.0;
};

ForwardBackward forward_backward(const LayeredGraph& g,
                                 std::span<const double> edge_weights);

// Dense V x V table of weighted path sums between node pairs.
class NodePairSums {
 public:
  NodePairSums(int num_nodes) : v_(num_nodes), data_(num_nodes * num_nodes) {}

  double operator()(int from, int to) const { return data_[from * v_ + to]; }
  double& at(int from, int to) { return data_[from * v_ + to]; }
  int num_nodes() const { return v_; }

 private:
  int v_;
  std::vector<double> data_;
};

NodePairSums node_pair_sums(const LayeredGraph& g,
                            std::span<const double> edge_weights);

// All s,d-paths in lexicographic order of their edge ids. Throws
// SizeLimitExceeded above `limit` paths.
std::vector<PathVector> enumerate_paths(const LayeredGraph& g,
                                        std::size_t limit = 1'000'000);

// Weights for `to`, copied from `from` by matching edge coordinates. Edges
// with no counterpart get weight one.
std::vector<double> carry_weights(const LayeredGraph& from,
                                  std::span<const double> from_weights,
                                  const LayeredGraph& to);

// Debug export, one line per edge:
//   id from_layer from_index to_layer to_index battlefield|AUX
std::string export_edge_list(const LayeredGraph& g);

}  // namespace blotto
