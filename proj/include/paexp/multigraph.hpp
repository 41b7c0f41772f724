// Copyright 2026 The paexp Authors
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

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paexp {

/// Vertex ids are 1-based throughout the library and in every file format.
using Vertex = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  std::uint32_t t = 0;  // arrival index, 1-based

  [[nodiscard]] bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex = 0;
  std::uint32_t multiplicity = 0;
};

/// Immutable undirected multigraph with loops.
///
/// A loop contributes 2 to the degree of its vertex, except for the optional
/// unit loop: the edge with arrival index 1, which contributes 1. Only the
/// tilde preferential attachment model sets it.
class Multigraph {
 public:
  Multigraph() = default;

  Multigraph(std::size_t vertex_count, std::vector<Edge> edges,
             bool first_edge_is_unit_loop = false)
      : n_(vertex_count), edges_(std::move(edges)) {
    degree_.assign(n_, 0);
    loops_.assign(n_, 0);
    adjacency_.assign(n_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.u < 1 || e.u > n_ || e.v < 1 || e.v > n_)
        throw std::out_of_range("edge endpoint out of range: {" +
                                std::to_string(e.u) + "," +
                                std::to_string(e.v) + "}");
      if (first_edge_is_unit_loop && e.t == 1) {
        if (!e.is_loop())
          throw std::invalid_argument("unit loop edge e_1 must be a loop");
        unit_loop_ = i;
      }
      if (e.is_loop()) {
        ++loops_[e.u - 1];
        degree_[e.u - 1] += (unit_loop_ == i) ? 1 : 2;
      } else {
        ++degree_[e.u - 1];
        ++degree_[e.v - 1];
        adjacency_[e.u - 1].push_back({e.v, 1});
        adjacency_[e.v - 1].push_back({e.u, 1});
      }
      volume_ += (unit_loop_ == i) ? 1 : 2;
    }
    if (first_edge_is_unit_loop && !unit_loop_)
      throw std::invalid_argument("unit loop requested but no edge e_1");
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end(),
                [](const Neighbor& a, const Neighbor& b) {
                  return a.vertex < b.vertex;
                });
      std::vector<Neighbor> merged;
      for (const Neighbor& nb : list) {
        if (!merged.empty() && merged.back().vertex == nb.vertex)
          ++merged.back().multiplicity;
        else
          merged.push_back(nb);
      }
      list = std::move(merged);
    }
  }

  /// Fixture helper: edges get arrival indices 1, 2, ... in list order.
  static Multigraph from_pairs(
      std::size_t vertex_count,
      std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> edges;
    std::uint32_t t = 0;
    for (auto [u, v] : pairs) edges.push_back({u, v, ++t});
    return Multigraph(vertex_count, std::move(edges));
  }

  [[nodiscard]] std::size_t vertex_count() const { return n_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }

  [[nodiscard]] std::int64_t degree(Vertex v) const {
    return degree_.at(v - 1);
  }
  [[nodiscard]] std::int64_t loop_count(Vertex v) const {
    return loops_.at(v - 1);
  }
  /// Non-loop neighbors with edge multiplicities, sorted by vertex id.
  [[nodiscard]] std::span<const Neighbor> neighbors(Vertex v) const {
    return adjacency_.at(v - 1);
  }
  [[nodiscard]] std::int64_t volume() const { return volume_; }
  [[nodiscard]] std::int64_t volume(std::span<const Vertex> subset) const {
    std::int64_t total = 0;
    for (Vertex v : subset) total += degree(v);
    return total;
  }
  [[nodiscard]] std::int64_t min_degree() const {
    if (degree_.empty()) return 0;
    return *std::min_element(degree_.begin(), degree_.end());
  }
  [[nodiscard]] bool has_unit_loop() const { return unit_loop_.has_value(); }
  /// Degree contribution of edge i (2 for ordinary edges and loops).
  [[nodiscard]] std::int64_t edge_weight(std::size_t i) const {
    return unit_loop_ == i ? 1 : 2;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> degree_;
  std::vector<std::int64_t> loops_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::int64_t volume_ = 0;
  std::optional<std::size_t> unit_loop_;
};

/// Validates ids against [1, n], sorts, and removes duplicates.
inline VertexSet make_vertex_set(std::size_t n,
                                 std::span<const Vertex> vertices) {
  VertexSet s(vertices.begin(), vertices.end());
  for (Vertex v : s)
    if (v < 1 || v > n)
      throw std::out_of_range("vertex " + std::to_string(v) +
                              " out of range 1.." + std::to_string(n));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline VertexSet make_vertex_set(std::size_t n,
                                 std::initializer_list<Vertex> vertices) {
  return make_vertex_set(
      n, std::span<const Vertex>(vertices.begin(), vertices.size()));
}

/// Bitmask (bit v-1) to sorted vertex set. n <= 64.
inline VertexSet mask_to_set(std::uint64_t mask) {
  VertexSet s;
  while (mask != 0) {
    s.push_back(static_cast<Vertex>(__builtin_ctzll(mask)) + 1);
    mask &= mask - 1;
  }
  return s;
}

inline std::uint64_t set_to_mask(std::span<const Vertex> s) {
  std::uint64_t mask = 0;
  for (Vertex v : s) mask |= std::uint64_t{1} << (v - 1);
  return mask;
}

}  // namespace paexp
