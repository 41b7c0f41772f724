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

// Modularity of vertex partitions and deterministic upper bounds on the
// optimum q*(G) = max_A q_A(G), where
//
//   q_A(G) = sum_{S in A} e(S)/e(G) - sum_{S in A} (vol(S)/vol(G))^2
//          = edge contribution   - degree tax.
//
// All scores are exact rationals. Volumes follow the graph's loop
// convention, so a tilde-model graph has vol(G) = 2hn - 1.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "paexp/cut_analysis.hpp"
#include "paexp/multigraph.hpp"
#include "paexp/pa_models.hpp"
#include "paexp/rational.hpp"
#include "paexp/rng.hpp"

namespace paexp {

/// Disjoint nonempty vertex sets covering 1..n, each sorted; parts ordered by
/// their smallest vertex.
class Partition {
 public:
  Partition() = default;

  Partition(std::size_t n, std::vector<VertexSet> parts) : n_(n) {
    std::vector<char> seen(n + 1, 0);
    std::size_t covered = 0;
    for (auto& part : parts) {
      if (part.empty()) throw std::invalid_argument("partition has empty part");
      part = make_vertex_set(n, part);
      for (Vertex v : part) {
        if (seen[v])
          throw std::invalid_argument("vertex " + std::to_string(v) +
                                      " appears in two parts");
        seen[v] = 1;
        ++covered;
      }
    }
    if (covered != n)
      throw std::invalid_argument("partition does not cover all vertices");
    std::sort(parts.begin(), parts.end());
    parts_ = std::move(parts);
  }

  /// From a block label per vertex (labels[v-1]).
  static Partition from_labels(std::span<const std::uint32_t> labels) {
    std::vector<VertexSet> parts;
    std::vector<std::size_t> slot;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] >= slot.size()) slot.resize(labels[i] + 1, SIZE_MAX);
      if (slot[labels[i]] == SIZE_MAX) {
        slot[labels[i]] = parts.size();
        parts.emplace_back();
      }
      parts[slot[labels[i]]].push_back(static_cast<Vertex>(i + 1));
    }
    return Partition(labels.size(), std::move(parts));
  }

  static Partition trivial(std::size_t n) {
    VertexSet all(n);
    std::iota(all.begin(), all.end(), Vertex{1});
    return Partition(n, {all});
  }

  static Partition singletons(std::size_t n) {
    std::vector<VertexSet> parts;
    for (Vertex v = 1; v <= n; ++v) parts.push_back({v});
    return Partition(n, std::move(parts));
  }

  [[nodiscard]] std::size_t vertex_count() const { return n_; }
  [[nodiscard]] const std::vector<VertexSet>& parts() const { return parts_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<VertexSet> parts_;
};

inline nlohmann::ordered_json partition_to_json(const Partition& p) {
  return nlohmann::ordered_json(p.parts());
}

inline Partition partition_from_json(std::size_t n,
                                     const nlohmann::ordered_json& j) {
  return Partition(n, j.get<std::vector<VertexSet>>());
}

struct ModularityScore {
  Rational q;
  Rational edge_contribution;
  Rational degree_tax;
};

inline ModularityScore modularity_score(const Multigraph& g,
                                        const Partition& partition) {
  if (partition.vertex_count() != g.vertex_count())
    throw std::invalid_argument("partition size does not match graph");
  const auto m = static_cast<std::int64_t>(g.edge_count());
  if (m == 0) return {};
  std::vector<std::size_t> block(g.vertex_count() + 1);
  for (std::size_t i = 0; i < partition.parts().size(); ++i)
    for (Vertex v : partition.parts()[i]) block[v] = i;
  std::int64_t inner = 0;
  for (const Edge& e : g.edges())
    if (block[e.u] == block[e.v]) ++inner;
  std::int64_t vol_sq = 0;
  for (const auto& part : partition.parts()) {
    std::int64_t vs = g.volume(part);
    vol_sq += vs * vs;
  }
  const std::int64_t vol = g.volume();
  ModularityScore s;
  s.edge_contribution = Rational(inner, m);
  s.degree_tax = Rational(vol_sq, vol * vol);
  s.q = s.edge_contribution - s.degree_tax;
  return s;
}

inline constexpr std::size_t kDefaultExactModularityLimit = 12;

struct OptimalModularity {
  Rational q;
  Partition argmax;
};

/// q*(G) by enumerating every set partition as a restricted growth string.
/// Ties keep the first partition in that order.
inline OptimalModularity exact_modularity(
    const Multigraph& g, std::size_t limit = kDefaultExactModularityLimit) {
  const std::size_t n = g.vertex_count();
  if (n > limit)
    throw std::length_error("exact modularity limited to " +
                            std::to_string(limit) + " vertices, graph has " +
                            std::to_string(n));
  if (n == 0) throw std::invalid_argument("graph has no vertices");
  const auto m = static_cast<std::int64_t>(g.edge_count());
  if (m == 0) return {Rational(0), Partition::trivial(n)};
  const std::int64_t vol = g.volume();
  const std::int64_t vol2 = vol * vol;

  // Scaled score: q * m * vol^2 = vol^2 * sum e(S) - m * sum vol(S)^2.
  std::vector<std::uint32_t> label(n, 0);
  std::vector<std::uint32_t> best_label(n, 0);
  std::vector<std::int64_t> block_vol(n, 0);
  // scratch[i][b]: edges from vertex i+1 to earlier vertices in block b
  std::vector<std::vector<std::int64_t>> scratch(
      n, std::vector<std::int64_t>(n + 1, 0));
  std::int64_t best_key = 0;
  bool have_best = false;

  auto recurse = [&](auto&& self, std::size_t i, std::uint32_t blocks,
                     std::int64_t inner, std::int64_t vol_sq) -> void {
    if (i == n) {
      std::int64_t key = vol2 * inner - m * vol_sq;
      if (!have_best || key > best_key) {
        have_best = true;
        best_key = key;
        best_label = label;
      }
      return;
    }
    const Vertex v = static_cast<Vertex>(i + 1);
    std::vector<std::int64_t>& to_block = scratch[i];
    std::fill(to_block.begin(), to_block.begin() + blocks + 1, 0);
    for (const Neighbor& nb : g.neighbors(v))
      if (nb.vertex < v) to_block[label[nb.vertex - 1]] += nb.multiplicity;
    const std::int64_t deg = g.degree(v);
    const std::int64_t loops = g.loop_count(v);
    for (std::uint32_t b = 0; b <= blocks; ++b) {
      label[i] = b;
      const std::int64_t old = block_vol[b];
      block_vol[b] = old + deg;
      self(self, i + 1, b == blocks ? blocks + 1 : blocks,
           inner + loops + to_block[b], vol_sq + 2 * old * deg + deg * deg);
      block_vol[b] = old;
    }
    label[i] = 0;
  };
  recurse(recurse, 0, 0, 0, 0);
  return {Rational(best_key, m * vol2), Partition::from_labels(best_label)};
}

/// Agglomerative lower bound on q*: from singletons, repeatedly merge the pair
/// of parts with the largest positive gain; the seed only breaks exact ties.
/// Falls back to {V} if the result scores below 0.
inline OptimalModularity greedy_modularity(const Multigraph& g, Seed seed) {
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) return {Rational(0), Partition::trivial(n)};
  const auto m = static_cast<std::int64_t>(g.edge_count());
  const std::int64_t vol = g.volume();
  Rng rng(seed);

  // Active parts with their volumes and inter-part edge counts.
  std::vector<std::vector<Vertex>> members(n);
  std::vector<std::int64_t> part_vol(n);
  std::vector<std::vector<std::int64_t>> between(n,
                                                 std::vector<std::int64_t>(n));
  std::vector<char> alive(n, 1);
  for (Vertex v = 1; v <= n; ++v) {
    members[v - 1] = {v};
    part_vol[v - 1] = g.degree(v);
    for (const Neighbor& nb : g.neighbors(v))
      between[v - 1][nb.vertex - 1] = nb.multiplicity;
  }

  // Gain of merging a and b, scaled by m * vol^2:
  //   e(a,b) * vol^2 - 2 * m * vol(a) * vol(b).
  auto gain = [&](std::size_t a, std::size_t b) {
    return between[a][b] * vol * vol - 2 * m * part_vol[a] * part_vol[b];
  };

  std::vector<std::pair<std::size_t, std::size_t>> ties;
  for (;;) {
    std::int64_t best = 0;
    ties.clear();
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!alive[b] || between[a][b] == 0) continue;
        std::int64_t gv = gain(a, b);
        if (gv <= 0 || gv < best) continue;
        if (gv > best) {
          best = gv;
          ties.clear();
        }
        ties.emplace_back(a, b);
      }
    }
    if (ties.empty()) break;
    auto [a, b] = ties[ties.size() == 1 ? 0 : rng.below(ties.size())];
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    part_vol[a] += part_vol[b];
    alive[b] = 0;
    for (std::size_t c = 0; c < n; ++c) {
      between[a][c] += between[b][c];
      between[c][a] = between[a][c];
      between[b][c] = between[c][b] = 0;
    }
    between[a][a] = 0;
  }

  std::vector<VertexSet> parts;
  for (std::size_t a = 0; a < n; ++a)
    if (alive[a]) parts.push_back(members[a]);
  Partition p(n, std::move(parts));
  ModularityScore s = modularity_score(g, p);
  if (s.q < Rational(0)) return {Rational(0), Partition::trivial(n)};
  return {s.q, std::move(p)};
}

/// Negative relative modularity
///   q_vr^-(S) = (vol(G)/vol(S)) * (e(S,V\S)/(2 e(G)) + vol(S)^2/vol(G)^2).
inline Rational q_vr_minus(const Multigraph& g,
                           std::span<const Vertex> subset) {
  CutReport cut = edge_boundary(g, subset);
  if (cut.vol <= 0) throw std::domain_error("q_vr_minus needs vol(S) > 0");
  const auto m = static_cast<std::int64_t>(g.edge_count());
  const std::int64_t vol = g.volume();
  return Rational(vol, cut.vol) * (Rational(cut.e_boundary, 2 * m) +
                                   Rational(cut.vol * cut.vol, vol * vol));
}

/// 1 - min over parts of q_vr^-(S); an upper bound on q_A(G). Parts of zero
/// volume carry zero weight in that argument and are skipped.
inline Rational prop2_bound(const Multigraph& g, const Partition& partition) {
  std::optional<Rational> lowest;
  for (const auto& part : partition.parts()) {
    if (g.volume(part) == 0) continue;
    Rational v = q_vr_minus(g, part);
    if (!lowest || v < *lowest) lowest = v;
  }
  if (!lowest) throw std::domain_error("prop2_bound needs a graph with edges");
  return Rational(1) - *lowest;
}

namespace detail {

inline void check_degree_conditions(const Multigraph& g, std::uint32_t h) {
  if (h < 1) throw std::domain_error("h must be >= 1");
  if (g.min_degree() < h)
    throw std::domain_error("minimum degree " + std::to_string(g.min_degree()) +
                            " is below h = " + std::to_string(h));
  if (g.volume() > 2 * static_cast<std::int64_t>(h) *
                       static_cast<std::int64_t>(g.vertex_count()))
    throw std::domain_error("average degree exceeds 2h");
}

inline Rational expansion_modularity_bound(const Multigraph& g, std::uint32_t h,
                                           const Rational& alpha,
                                           const Rational& cap) {
  check_degree_conditions(g, h);
  if (alpha < Rational(0)) throw std::domain_error("alpha must be >= 0");
  return Rational(1) -
         min(alpha / Rational(2 * static_cast<std::int64_t>(h)), cap);
}

}  // namespace detail

/// 1 - min{alpha/(2h), 3/16}, for graphs with minimum degree >= h and average
/// degree <= 2h.
inline Rational lemma1_bound(const Multigraph& g, std::uint32_t h,
                             const Rational& alpha) {
  return detail::expansion_modularity_bound(g, h, alpha, Rational(3, 16));
}

/// 1 - min{alpha/(2h), 1/16}; the weaker baseline.
inline Rational prop1_bound(const Multigraph& g, std::uint32_t h,
                            const Rational& alpha) {
  return detail::expansion_modularity_bound(g, h, alpha, Rational(1, 16));
}

inline Rational lemma1_bound(const PAGraph& g, const Rational& alpha) {
  return lemma1_bound(g.graph, g.h, alpha);
}
inline Rational prop1_bound(const PAGraph& g, const Rational& alpha) {
  return prop1_bound(g.graph, g.h, alpha);
}

inline constexpr std::size_t kInnerEdgeCheckLimit = 16;

/// True iff e(S) <= h|S| for every vertex subset S (exhaustive).
inline bool inner_edges_bounded(const Multigraph& g, std::uint32_t h) {
  const std::size_t n = g.vertex_count();
  if (n > kInnerEdgeCheckLimit)
    throw std::length_error("inner edge check limited to " +
                            std::to_string(kInnerEdgeCheckLimit) + " vertices");
  std::vector<std::uint32_t> edge_mask;
  for (const Edge& e : g.edges())
    edge_mask.push_back((1u << (e.u - 1)) | (1u << (e.v - 1)));
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::int64_t inner = 0;
    for (std::uint32_t em : edge_mask)
      if ((em & s) == em) ++inner;
    if (inner > static_cast<std::int64_t>(h) * __builtin_popcount(s))
      return false;
  }
  return true;
}

struct ProfileBoundTerms {
  Rational bound;
  std::size_t argmin_k = 0;     // 0 when n < 2
  std::vector<Rational> delta;  // delta[k-1] = min{alpha_{k/n}/h, 1}
};

/// 1 - min_{k=1..floor(n/2)} [ d_k/(2+d_k) + k/(2n) ], d_k =
/// min{alpha_{k/n}/h, 1}.
///
/// alpha_u is constant for u in [k/n, (k+1)/n) and the second term grows with
/// u, so evaluating at u = k/n covers every set size a subset can have. For
/// n = 1 there is no such k and the bound is 1 - 1/3 (the u -> 0 limit with
/// alpha = +inf).
///
/// Requires minimum degree >= h and e(S) <= h|S| for all S. The latter is
/// checked exhaustively when verify_inner_bound is set.
inline ProfileBoundTerms profile_bound_terms(
    const Multigraph& g, std::uint32_t h, bool verify_inner_bound = true,
    std::size_t limit = kDefaultExhaustiveLimit) {
  if (h < 1) throw std::domain_error("h must be >= 1");
  if (g.min_degree() < h)
    throw std::domain_error("theorem3_bound needs minimum degree >= h");
  if (verify_inner_bound && !inner_edges_bounded(g, h))
    throw std::domain_error("theorem3_bound needs e(S) <= h|S| for all S");
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  ProfileBoundTerms out;
  std::optional<Rational> lowest;
  for (const ProfileEntry& entry : expansion_profile(g, limit)) {
    Rational delta = min(entry.alpha / Rational(h), Rational(1));
    Rational term = delta / (Rational(2) + delta) +
                    Rational(static_cast<std::int64_t>(entry.k), 2 * n);
    out.delta.push_back(delta);
    if (!lowest || term < *lowest) {
      lowest = term;
      out.argmin_k = entry.k;
    }
  }
  out.bound = Rational(1) - (lowest ? *lowest : Rational(1, 3));
  return out;
}

inline Rational theorem3_bound(const Multigraph& g, std::uint32_t h,
                               bool verify_inner_bound = true) {
  return profile_bound_terms(g, h, verify_inner_bound).bound;
}

/// e(S) <= h|S| holds for every PA graph by construction (each inner edge was
/// introduced by a mini-vertex of S); it is re-verified when n is small.
inline Rational theorem3_bound(const PAGraph& g) {
  return theorem3_bound(g.graph, g.h, g.n() <= kInnerEdgeCheckLimit);
}

}  // namespace paexp
