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

// Edge boundaries and u-bounded edge expansion
//
//   alpha_u(G) = min { e(S, V\S) / |S| : 1 <= |S| <= u|V| },
//
// with alpha_u(G) = +inf when u|V| < 1. Values are exact rationals.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paexp/multigraph.hpp"
#include "paexp/rational.hpp"
#include "paexp/rng.hpp"

namespace paexp {

struct CutReport {
  VertexSet subset;
  std::int64_t e_inner = 0;     // e(S), loops included
  std::int64_t e_boundary = 0;  // e(S, V\S)
  std::int64_t vol = 0;         // vol(S)
  Rational ratio;               // e(S, V\S) / |S|; 0 for the empty set
};

inline CutReport edge_boundary(const Multigraph& g,
                               std::span<const Vertex> vertices) {
  CutReport r;
  r.subset = make_vertex_set(g.vertex_count(), vertices);
  std::vector<char> in(g.vertex_count() + 1, 0);
  for (Vertex v : r.subset) in[v] = 1;
  for (const Edge& e : g.edges()) {
    bool a = in[e.u] != 0;
    bool b = in[e.v] != 0;
    if (a && b)
      ++r.e_inner;
    else if (a != b)
      ++r.e_boundary;
  }
  r.vol = g.volume(r.subset);
  if (!r.subset.empty())
    r.ratio =
        Rational(r.e_boundary, static_cast<std::int64_t>(r.subset.size()));
  return r;
}

enum class ExpansionMethod { Exhaustive, Sampled };

struct ExpansionResult {
  Rational u;
  std::optional<Rational> alpha;  // nullopt encodes +inf
  std::optional<VertexSet> witness;
  ExpansionMethod method = ExpansionMethod::Exhaustive;

  [[nodiscard]] bool infinite() const { return !alpha.has_value(); }
};

inline constexpr std::size_t kDefaultExhaustiveLimit = 24;

/// floor(u * n), validating 0 < u <= 1/2.
inline std::size_t max_subset_size(const Rational& u, std::size_t n) {
  if (u <= Rational(0) || u > Rational(1, 2))
    throw std::invalid_argument("u must satisfy 0 < u <= 1/2, got " + u.str());
  return static_cast<std::size_t>(
      (static_cast<__int128>(u.num()) * static_cast<__int128>(n)) / u.den());
}

namespace detail {

/// Lexicographic order of the sorted vertex lists encoded by two masks.
inline bool lex_less(std::uint64_t a, std::uint64_t b) {
  std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  unsigned i = static_cast<unsigned>(__builtin_ctzll(diff));
  std::uint64_t above = i + 1 < 64 ? ~((std::uint64_t{2} << i) - 1) : 0;
  if ((a >> i) & 1u) return (b & above) != 0;
  return (a & above) == 0;
}

struct SizeBest {
  std::int64_t boundary = -1;  // -1: no subset of this size seen
  std::uint64_t mask = 0;
};

// Ratio b1/k1 < b2/k2, ties resolved lexicographically.
inline bool better(std::int64_t b1, std::int64_t k1, std::uint64_t m1,
                   std::int64_t b2, std::int64_t k2, std::uint64_t m2) {
  std::int64_t lhs = b1 * k2;
  std::int64_t rhs = b2 * k1;
  if (lhs != rhs) return lhs < rhs;
  return lex_less(m1, m2);
}

inline void check_exhaustive(const Multigraph& g, std::size_t limit) {
  if (g.vertex_count() > limit || g.vertex_count() > 62)
    throw std::length_error("graph has " + std::to_string(g.vertex_count()) +
                            " vertices, over the exhaustive limit " +
                            std::to_string(limit) +
                            "; use sampled_expansion for an upper estimate");
}

/// Best (minimum boundary, then lexicographically smallest) subset of every
/// size 1..kmax, by Gray-code enumeration of all 2^n subsets with an
/// incremental boundary count. Entry 0 is unused.
inline std::vector<SizeBest> best_by_size(const Multigraph& g,
                                          std::size_t kmax) {
  const std::size_t n = g.vertex_count();
  std::vector<SizeBest> best(kmax + 1);
  if (kmax == 0) return best;
  std::vector<std::int64_t> outer(n + 1, 0);  // non-loop degree
  for (Vertex v = 1; v <= n; ++v)
    for (const Neighbor& nb : g.neighbors(v)) outer[v] += nb.multiplicity;

  std::uint64_t mask = 0;
  std::int64_t boundary = 0;
  std::size_t size = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < count; ++i) {
    const unsigned bit = static_cast<unsigned>(__builtin_ctzll(i));
    const Vertex v = bit + 1;
    std::int64_t into_set = 0;
    for (const Neighbor& nb : g.neighbors(v))
      if ((mask >> (nb.vertex - 1)) & 1u) into_set += nb.multiplicity;
    const std::int64_t delta = outer[v] - 2 * into_set;
    mask ^= std::uint64_t{1} << bit;
    if ((mask >> bit) & 1u) {
      boundary += delta;
      ++size;
    } else {
      boundary -= delta;
      --size;
    }
    if (size >= 1 && size <= kmax) {
      SizeBest& b = best[size];
      if (b.boundary < 0 || boundary < b.boundary ||
          (boundary == b.boundary && lex_less(mask, b.mask))) {
        b.boundary = boundary;
        b.mask = mask;
      }
    }
  }
  return best;
}

}  // namespace detail

/// Exact alpha_u by exhaustive enumeration. Throws std::length_error above
/// `limit` vertices.
inline ExpansionResult exact_expansion(
    const Multigraph& g, const Rational& u,
    std::size_t limit = kDefaultExhaustiveLimit) {
  ExpansionResult result{u, std::nullopt, std::nullopt,
                         ExpansionMethod::Exhaustive};
  const std::size_t kmax = max_subset_size(u, g.vertex_count());
  if (kmax < 1) return result;
  detail::check_exhaustive(g, limit);
  auto best = detail::best_by_size(g, kmax);
  std::size_t arg = 0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (best[k].boundary < 0) continue;
    if (arg == 0 ||
        detail::better(best[k].boundary, static_cast<std::int64_t>(k),
                       best[k].mask, best[arg].boundary,
                       static_cast<std::int64_t>(arg), best[arg].mask))
      arg = k;
  }
  result.alpha = Rational(best[arg].boundary, static_cast<std::int64_t>(arg));
  result.witness = mask_to_set(best[arg].mask);
  return result;
}

struct ProfileEntry {
  std::size_t k = 0;
  Rational alpha;  // alpha_{k/n}
  VertexSet witness;
};

/// alpha_{k/n} for k = 1..floor(n/2). Non-increasing in k.
inline std::vector<ProfileEntry> expansion_profile(
    const Multigraph& g, std::size_t limit = kDefaultExhaustiveLimit) {
  const std::size_t n = g.vertex_count();
  const std::size_t kmax = n / 2;
  std::vector<ProfileEntry> profile;
  if (kmax == 0) return profile;
  detail::check_exhaustive(g, limit);
  auto best = detail::best_by_size(g, kmax);
  std::size_t arg = 0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (arg == 0 ||
        detail::better(best[k].boundary, static_cast<std::int64_t>(k),
                       best[k].mask, best[arg].boundary,
                       static_cast<std::int64_t>(arg), best[arg].mask))
      arg = k;
    profile.push_back(
        {k, Rational(best[arg].boundary, static_cast<std::int64_t>(arg)),
         mask_to_set(best[arg].mask)});
  }
  return profile;
}

struct SampledOptions {
  std::size_t trials = 64;
  bool local_moves = true;
  std::size_t max_moves = 10000;
};

/// Upper estimate of alpha_u: the best ratio over random subsets of size
/// 1..floor(un), each improved by single-vertex add/remove moves. Every
/// returned value is the ratio of a real subset, so it is >= alpha_u.
inline ExpansionResult sampled_expansion(const Multigraph& g, const Rational& u,
                                         Seed seed,
                                         SampledOptions options = {}) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  ExpansionResult result{u, std::nullopt, std::nullopt,
                         ExpansionMethod::Sampled};
  const std::size_t n = g.vertex_count();
  const std::size_t kmax = max_subset_size(u, n);
  if (kmax < 1) return result;

  Rng rng(seed);
  std::vector<Vertex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Vertex>(i + 1);
  std::vector<char> in(n + 1, 0);

  // Boundary change when v flips membership.
  auto flip_delta = [&](Vertex v) {
    std::int64_t to_in = 0;
    std::int64_t to_out = 0;
    for (const Neighbor& nb : g.neighbors(v))
      (in[nb.vertex] ? to_in : to_out) += nb.multiplicity;
    return in[v] ? to_in - to_out : to_out - to_in;
  };

  std::optional<Rational> best;
  VertexSet best_set;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    std::fill(in.begin(), in.end(), 0);
    const std::size_t size = 1 + rng.below(kmax);
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t j = i + rng.below(n - i);
      std::swap(order[i], order[j]);
      in[order[i]] = 1;
    }
    std::int64_t boundary = 0;
    for (const Edge& e : g.edges())
      if (in[e.u] != in[e.v]) ++boundary;
    std::int64_t current = static_cast<std::int64_t>(size);

    for (std::size_t moves = 0;
         options.local_moves && moves < options.max_moves; ++moves) {
      Vertex pick = 0;
      std::int64_t pick_b = boundary;
      std::int64_t pick_k = current;
      for (Vertex v = 1; v <= n; ++v) {
        std::int64_t k = in[v] ? current - 1 : current + 1;
        if (k < 1 || k > static_cast<std::int64_t>(kmax)) continue;
        std::int64_t b = boundary + flip_delta(v);
        if (b * pick_k < pick_b * k) {
          pick = v;
          pick_b = b;
          pick_k = k;
        }
      }
      if (pick == 0) break;
      in[pick] = !in[pick];
      boundary = pick_b;
      current = pick_k;
    }

    Rational ratio(boundary, current);
    VertexSet members;
    for (Vertex v = 1; v <= n; ++v)
      if (in[v]) members.push_back(v);
    if (!best || ratio < *best) {
      best = ratio;
      best_set = std::move(members);
    }
  }
  result.alpha = best;
  result.witness = std::move(best_set);
  return result;
}

}  // namespace paexp
