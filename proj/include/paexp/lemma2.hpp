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

// Cut-probability bound for preferential attachment graphs: for a fixed
// S with |S| = k and a fixed set A of labeled edges e_t with |A| < hk,
//
//   P(E_G(S, V\S) = A) <= C(hk, |A|) / C(hn - |A|, hk - |A|).
//
// Events are identified by arrival index t, not by endpoint pair. The bound
// is checked exactly (by enumerating every arrival log) for small hn and by
// Monte Carlo beyond that.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paexp/multigraph.hpp"
#include "paexp/pa_models.hpp"
#include "paexp/parallel.hpp"
#include "paexp/rational.hpp"
#include "paexp/rng.hpp"

namespace paexp {

struct CutEventSpec {
  VertexSet S;                   // sorted, nonempty
  std::vector<std::uint32_t> A;  // sorted arrival indices
};

/// Validates S within 1..n, A within 1..hn, and |A| < h|S|. The bound says
/// nothing at |A| >= h|S|, so such specs are rejected.
inline CutEventSpec make_cut_event_spec(std::uint32_t h, std::uint32_t n,
                                        std::span<const Vertex> S,
                                        std::span<const std::uint32_t> A) {
  CutEventSpec spec;
  spec.S = make_vertex_set(n, S);
  if (spec.S.empty()) throw std::invalid_argument("S must be nonempty");
  spec.A.assign(A.begin(), A.end());
  std::sort(spec.A.begin(), spec.A.end());
  spec.A.erase(std::unique(spec.A.begin(), spec.A.end()), spec.A.end());
  const std::uint64_t edges = std::uint64_t{h} * n;
  for (auto t : spec.A)
    if (t < 1 || t > edges)
      throw std::invalid_argument("edge index " + std::to_string(t) +
                                  " outside 1..hn");
  if (spec.A.size() >= std::uint64_t{h} * spec.S.size())
    throw std::invalid_argument("cut event needs |A| < h|S|");
  return spec;
}

/// Exact binomial coefficient; throws if it does not fit in 64 bits.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > INT64_MAX) throw std::overflow_error("binomial exceeds 64 bits");
  }
  return static_cast<std::int64_t>(r);
}

/// C(hk, a) / C(hn - a, hk - a).
inline Rational lemma2_bound(std::int64_t h, std::int64_t n, std::int64_t k,
                             std::int64_t a) {
  if (h < 1 || k < 1 || k > n || a < 0 || a >= h * k)
    throw std::domain_error(
        "lemma2_bound needs h >= 1, 1 <= k <= n, "
        "0 <= a < hk");
  return Rational(binomial(h * k, a), binomial(h * n - a, h * k - a));
}

struct MCEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double std_err = 0.0;
  Rational bound;
};

namespace detail {

// True iff the boundary edge set of S in the merged log is exactly A
// (marked[t] == 1 for t in A).
inline bool boundary_matches(std::span<const std::uint32_t> targets,
                             std::uint32_t h, std::span<const char> in_s,
                             std::span<const char> marked) {
  for (std::uint32_t t = 1; t <= targets.size(); ++t) {
    const bool crosses =
        in_s[vertex_of(t, h)] != in_s[vertex_of(targets[t - 1], h)];
    if (crosses != (marked[t] != 0)) return false;
  }
  return true;
}

}  // namespace detail

/// Monte Carlo frequency of the event E_G(S, V\S) = A. Trial i samples with
/// derive_seed(seed, i), so the result does not depend on thread count.
inline MCEstimate estimate_cut_event(ModelTag model, std::uint32_t h,
                                     std::uint32_t n, const CutEventSpec& spec,
                                     std::uint64_t trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<char> in_s(n + 1, 0);
  for (Vertex v : spec.S) in_s.at(v) = 1;
  std::vector<char> marked(std::size_t{h} * n + 1, 0);
  for (auto t : spec.A) marked.at(t) = 1;

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> chunk_hits(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(seed, i));
      ArrivalLog log = sample_log(model, h, n, rng);
      if (detail::boundary_matches(log.targets, h, in_s, marked)) ++hits;
    }
    chunk_hits[c] = hits;
  });

  MCEstimate est;
  est.trials = trials;
  for (auto hcount : chunk_hits) est.hits += hcount;
  est.p_hat = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.std_err =
      std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  est.bound = lemma2_bound(h, n, static_cast<std::int64_t>(spec.S.size()),
                           static_cast<std::int64_t>(spec.A.size()));
  return est;
}

inline void check_enumerable(std::uint32_t h, std::uint32_t n) {
  if (h < 1 || n < 1) throw std::invalid_argument("need h, n >= 1");
  if (std::uint64_t{h} * n > kMaxEnumeratedLogLength)
    throw std::length_error("exact cut events limited to hn <= " +
                            std::to_string(kMaxEnumeratedLogLength));
}

/// Exact probability of E_G(S, V\S) = A, summed over all arrival logs.
inline Rational exact_cut_event(ModelTag model, std::uint32_t h,
                                std::uint32_t n, const CutEventSpec& spec) {
  check_enumerable(h, n);
  const std::uint32_t length = h * n;
  std::vector<char> in_s(n + 1, 0);
  for (Vertex v : spec.S) in_s.at(v) = 1;
  std::vector<char> marked(length + 1, 0);
  for (auto t : spec.A) marked.at(t) = 1;
  std::int64_t total = 0;
  for_each_log(model, length,
               [&](std::span<const std::uint32_t> targets, std::int64_t w) {
                 if (detail::boundary_matches(targets, h, in_s, marked))
                   total += w;
               });
  return Rational(total, log_denominator(model, length));
}

struct Lemma2Violation {
  VertexSet S;
  std::vector<std::uint32_t> A;
  Rational probability;
  Rational bound;
};

struct Lemma2Scan {
  ModelTag model = ModelTag::StandardPA;
  std::uint32_t h = 0;
  std::uint32_t n = 0;
  std::uint64_t checked = 0;  // (S, A) pairs with |A| < h|S|
  std::uint64_t nonzero = 0;  // of those, events with positive probability
  std::vector<Lemma2Violation> violations;
  Rational tightest;  // max probability / bound seen
};

/// Exact check of the bound for every nonempty S and every A with
/// |A| < h|S|. One pass over all arrival logs tallies, per S, the
/// probability of each boundary edge set.
inline Lemma2Scan lemma2_exhaustive(ModelTag model, std::uint32_t h,
                                    std::uint32_t n) {
  check_enumerable(h, n);
  const std::uint32_t length = h * n;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  const std::uint64_t edge_sets = std::uint64_t{1} << length;
  std::vector<std::int64_t> tally(subsets * edge_sets, 0);
  std::vector<std::uint32_t> ends(length);
  for_each_log(model, length,
               [&](std::span<const std::uint32_t> targets, std::int64_t w) {
                 for (std::uint32_t t = 1; t <= length; ++t)
                   ends[t - 1] = (1u << (vertex_of(t, h) - 1)) |
                                 (1u << (vertex_of(targets[t - 1], h) - 1));
                 for (std::uint64_t s = 1; s < subsets; ++s) {
                   std::uint64_t cross = 0;
                   for (std::uint32_t t = 0; t < length; ++t) {
                     std::uint64_t hit = ends[t] & s;
                     if (hit != 0 && hit != ends[t]) cross |= 1ull << t;
                   }
                   tally[s * edge_sets + cross] += w;
                 }
               });

  const std::int64_t den = log_denominator(model, length);
  Lemma2Scan scan{model, h, n, 0, 0, {}, Rational(0)};
  for (std::uint64_t s = 1; s < subsets; ++s) {
    const auto k = static_cast<std::int64_t>(__builtin_popcountll(s));
    for (std::uint64_t a = 0; a < edge_sets; ++a) {
      const auto size = static_cast<std::int64_t>(__builtin_popcountll(a));
      if (size >= static_cast<std::int64_t>(h) * k) continue;
      ++scan.checked;
      const std::int64_t w = tally[s * edge_sets + a];
      if (w == 0) continue;
      ++scan.nonzero;
      const Rational p(w, den);
      const Rational bound = lemma2_bound(h, n, k, size);
      const Rational ratio = p / bound;
      if (scan.tightest < ratio) scan.tightest = ratio;
      if (bound < p) {
        std::vector<std::uint32_t> edges;
        for (std::uint32_t t = 0; t < length; ++t)
          if ((a >> t) & 1u) edges.push_back(t + 1);
        scan.violations.push_back({mask_to_set(s), std::move(edges), p, bound});
      }
    }
  }
  return scan;
}

}  // namespace paexp
