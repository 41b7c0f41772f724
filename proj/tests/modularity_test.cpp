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

#include "paexp/modularity.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "paexp/cut_analysis.hpp"
#include "paexp/pa_models.hpp"

using namespace paexp;

namespace {

Multigraph k2() { return Multigraph::from_pairs(2, {{1, 2}}); }
Multigraph k3() { return Multigraph::from_pairs(3, {{1, 2}, {2, 3}, {1, 3}}); }
Multigraph k4() {
  return Multigraph::from_pairs(
      4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
}

// Sum over parts of e(S)/m - (vol(S)/vol)^2, with e(S) and vol(S) counted
// straight from the edge list.
Rational reference_score(const Multigraph& g,
                         const std::vector<std::vector<Vertex>>& parts) {
  const auto m = static_cast<std::int64_t>(g.edge_count());
  std::int64_t vol = 0;
  for (std::size_t i = 0; i < g.edge_count(); ++i) vol += g.edge_weight(i);
  Rational q(0);
  for (const auto& part : parts) {
    auto has = [&](Vertex v) {
      for (Vertex w : part)
        if (w == v) return true;
      return false;
    };
    std::int64_t inner = 0;
    std::int64_t pv = 0;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const Edge& e = g.edges()[i];
      if (has(e.u) && has(e.v)) ++inner;
      if (e.u == e.v) {
        if (has(e.u)) pv += g.edge_weight(i);
      } else {
        pv += has(e.u) ? 1 : 0;
        pv += has(e.v) ? 1 : 0;
      }
    }
    q += Rational(inner, m) - Rational(pv * pv, vol * vol);
  }
  return q;
}

// Max over all set partitions, each built by placing vertex v into an
// existing block or a new one.
Rational reference_optimum(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> parts;
  std::optional<Rational> best;
  std::function<void(Vertex)> place = [&](Vertex v) {
    if (v > n) {
      Rational q = reference_score(g, parts);
      if (!best || *best < q) best = q;
      return;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      parts[i].push_back(v);
      place(v + 1);
      parts[i].pop_back();
    }
    parts.push_back({v});
    place(v + 1);
    parts.pop_back();
  };
  place(1);
  return *best;
}

std::vector<PAGraph> corpus(std::uint32_t max_n) {
  std::vector<PAGraph> out;
  std::uint64_t s = 0;
  for (auto model : {ModelTag::StandardPA, ModelTag::TildePA})
    for (std::uint32_t h : {1u, 2u, 3u})
      for (std::uint32_t n = 2; n <= max_n; n += 2)
        for (int rep = 0; rep < 2; ++rep)
          out.push_back(
              generate(model, h, n, derive_seed(Seed{21}, s++)).graph);
  return out;
}

Partition random_partition(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> labels(n);
  const std::uint64_t blocks = 1 + rng.below(n);
  for (auto& l : labels) l = static_cast<std::uint32_t>(rng.below(blocks));
  return Partition::from_labels(labels);
}

}  // namespace

TEST(Partition, Validation) {
  EXPECT_THROW(Partition(3, {{1, 2}}), std::invalid_argument);
  EXPECT_THROW(Partition(3, {{1, 2}, {2, 3}}), std::invalid_argument);
  EXPECT_THROW(Partition(3, {{1, 2, 3}, {}}), std::invalid_argument);
  EXPECT_THROW(Partition(3, {{1, 2}, {4}}), std::out_of_range);
  Partition p(4, {{4, 2}, {3, 1}});
  EXPECT_EQ(p.parts(), (std::vector<VertexSet>{{1, 3}, {2, 4}}));
  std::vector<std::uint32_t> labels{7, 0, 7, 0};
  EXPECT_EQ(Partition::from_labels(labels), p);
  EXPECT_EQ(partition_from_json(4, partition_to_json(p)), p);
}

TEST(ModularityScore, TrivialPartitionIsZero) {
  for (const PAGraph& g : corpus(8)) {
    auto s = modularity_score(g.graph, Partition::trivial(g.n()));
    EXPECT_EQ(s.q, Rational(0));
    EXPECT_EQ(s.edge_contribution, Rational(1));
    EXPECT_EQ(s.degree_tax, Rational(1));
  }
}

TEST(ModularityScore, SmallGraphs) {
  EXPECT_EQ(modularity_score(k2(), Partition::singletons(2)).q,
            Rational(-1, 2));
  auto s = modularity_score(k3(), Partition::singletons(3));
  EXPECT_EQ(s.q, Rational(-1, 3));
  EXPECT_EQ(s.edge_contribution, Rational(0));
  EXPECT_EQ(s.degree_tax, Rational(1, 3));
  EXPECT_EQ(modularity_score(Multigraph(3, {}), Partition::singletons(3)).q,
            Rational(0));
}

TEST(ModularityScore, MatchesReferenceOnRandomPartitions) {
  Rng rng(Seed{5});
  for (const PAGraph& g : corpus(10))
    for (int i = 0; i < 10; ++i) {
      Partition p = random_partition(g.n(), rng);
      auto s = modularity_score(g.graph, p);
      EXPECT_EQ(s.q, reference_score(g.graph, p.parts()));
      EXPECT_EQ(s.q, s.edge_contribution - s.degree_tax);
      EXPECT_GE(s.edge_contribution, Rational(0));
      EXPECT_LE(s.edge_contribution, Rational(1));
      EXPECT_GT(s.degree_tax, Rational(0));
      EXPECT_LT(s.q, Rational(1));
    }
}

TEST(ExactModularity, SmallGraphs) {
  auto a = exact_modularity(k2());
  EXPECT_EQ(a.q, Rational(0));
  EXPECT_EQ(a.argmax, Partition::trivial(2));
  EXPECT_EQ(exact_modularity(k3()).q, Rational(0));
  // Two triangles joined by one edge.
  auto barbell = Multigraph::from_pairs(
      6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}, {3, 4}});
  auto b = exact_modularity(barbell);
  EXPECT_EQ(b.q, Rational(5, 14));
  EXPECT_EQ(b.argmax, Partition(6, {{1, 2, 3}, {4, 5, 6}}));
}

TEST(ExactModularity, MatchesReferenceEnumeration) {
  for (const PAGraph& g : corpus(8)) {
    auto best = exact_modularity(g.graph);
    EXPECT_EQ(best.q, reference_optimum(g.graph));
    EXPECT_EQ(modularity_score(g.graph, best.argmax).q, best.q);
    EXPECT_GE(best.q, Rational(0));
  }
}

TEST(ExactModularity, LimitRefuses) {
  auto g = generate(ModelTag::StandardPA, 2, 13, Seed{1}).graph.graph;
  EXPECT_THROW(exact_modularity(g), std::length_error);
}

TEST(GreedyModularity, BetweenZeroAndExact) {
  EXPECT_EQ(greedy_modularity(k2(), Seed{1}).q, Rational(0));
  std::uint64_t s = 0;
  for (const PAGraph& g : corpus(10)) {
    auto greedy = greedy_modularity(g.graph, Seed{s++});
    auto exact = exact_modularity(g.graph);
    EXPECT_GE(greedy.q, Rational(0));
    EXPECT_LE(greedy.q, exact.q);
    EXPECT_EQ(modularity_score(g.graph, greedy.argmax).q, greedy.q);
  }
}

TEST(GreedyModularity, DeterministicPerSeed) {
  auto g = generate(ModelTag::TildePA, 2, 30, Seed{9}).graph.graph;
  auto a = greedy_modularity(g, Seed{4});
  auto b = greedy_modularity(g, Seed{4});
  EXPECT_EQ(a.q, b.q);
  EXPECT_EQ(a.argmax, b.argmax);
}

TEST(QvrMinus, Examples) {
  EXPECT_EQ(q_vr_minus(k2(), std::vector<Vertex>{1}), Rational(3, 2));
  EXPECT_EQ(q_vr_minus(k3(), std::vector<Vertex>{2}), Rational(4, 3));
  for (const PAGraph& g : corpus(6)) {
    VertexSet all = Partition::trivial(g.n()).parts()[0];
    EXPECT_EQ(q_vr_minus(g.graph, all), Rational(1));
    for (std::uint64_t mask = 1; mask < (1ull << g.n()); ++mask)
      EXPECT_GT(q_vr_minus(g.graph, mask_to_set(mask)), Rational(0));
  }
  auto isolated = Multigraph::from_pairs(3, {{1, 2}});
  EXPECT_THROW(q_vr_minus(isolated, std::vector<Vertex>{3}), std::domain_error);
}

TEST(PartitionBound, Examples) {
  EXPECT_EQ(prop2_bound(k2(), Partition::trivial(2)), Rational(0));
  EXPECT_EQ(prop2_bound(k2(), Partition::singletons(2)), Rational(-1, 2));
  EXPECT_EQ(modularity_score(k2(), Partition::singletons(2)).q,
            Rational(-1, 2));
}

TEST(PartitionBound, HoldsOnRandomPartitions) {
  Rng rng(Seed{17});
  for (const PAGraph& g : corpus(12))
    for (int i = 0; i < 20; ++i) {
      Partition p = random_partition(g.n(), rng);
      EXPECT_LE(modularity_score(g.graph, p).q, prop2_bound(g.graph, p));
    }
}

TEST(ExpansionModularityBound, Examples) {
  auto g = generate(ModelTag::StandardPA, 2, 6, Seed{2}).graph;
  EXPECT_EQ(lemma1_bound(g, Rational(3, 4)), Rational(13, 16));
  EXPECT_EQ(lemma1_bound(g, Rational(5)), Rational(13, 16));
  EXPECT_EQ(lemma1_bound(g, Rational(0)), Rational(1));
  EXPECT_EQ(lemma1_bound(g, Rational(1, 2)), Rational(7, 8));
  EXPECT_EQ(prop1_bound(g, Rational(1, 4)), Rational(15, 16));
  EXPECT_EQ(prop1_bound(g, Rational(0)), Rational(1));
  for (std::int64_t a = 0; a <= 40; ++a) {
    Rational alpha(a, 10);
    EXPECT_LE(lemma1_bound(g, alpha), prop1_bound(g, alpha));
  }
}

TEST(ExpansionModularityBound, Preconditions) {
  EXPECT_THROW(lemma1_bound(k4(), 4, Rational(1)), std::domain_error);
  EXPECT_THROW(lemma1_bound(k4(), 1, Rational(1)), std::domain_error);
  EXPECT_THROW(prop1_bound(k4(), 4, Rational(1)), std::domain_error);
  EXPECT_NO_THROW(lemma1_bound(k4(), 3, Rational(1)));
}

TEST(ProfileBound, PerfectExpander) {
  // K4 with h = 1: delta is 1 at every size, so k = 1 wins.
  auto t = profile_bound_terms(k4(), 1, false);
  EXPECT_EQ(t.bound, Rational(1) - (Rational(1, 3) + Rational(1, 8)));
  EXPECT_EQ(t.bound, Rational(13, 24));
  EXPECT_EQ(t.argmin_k, 1u);
  EXPECT_THROW(theorem3_bound(k4(), 1, true), std::domain_error);
  EXPECT_THROW(theorem3_bound(k4(), 4, false), std::domain_error);
  auto one = merge(ArrivalLog{ModelTag::StandardPA, 2, 1, {1, 1}}).graph;
  EXPECT_EQ(theorem3_bound(one, 2), Rational(2, 3));
}

TEST(ProfileBound, UpperBoundsExactOptimumOnCorpus) {
  for (const PAGraph& g : corpus(12)) {
    const Rational q = exact_modularity(g.graph).q;
    auto terms = profile_bound_terms(g.graph, g.h, true);
    EXPECT_LE(q, terms.bound);
    EXPECT_EQ(terms.bound, theorem3_bound(g));
    auto alpha = exact_expansion(g.graph, Rational(1, 2));
    EXPECT_LE(q, lemma1_bound(g, *alpha.alpha));
    EXPECT_LE(q, prop1_bound(g, *alpha.alpha));
    ASSERT_FALSE(terms.delta.empty());
    // A singleton has empty boundary only if its vertex is isolated, which
    // the tilde model rules out (every later mini-vertex attaches backwards).
    bool isolated = false;
    for (Vertex v = 1; v <= g.n(); ++v)
      isolated = isolated || g.graph.neighbors(v).empty();
    EXPECT_EQ(terms.delta[0] == Rational(0), isolated);
    if (g.model == ModelTag::TildePA) {
      EXPECT_GT(terms.delta[0], Rational(0));
    }
  }
}
