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

#include "paexp/pa_models.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "paexp/cut_analysis.hpp"
#include "paexp/graph_io.hpp"

using namespace paexp;

namespace {

// Step-by-step probability of a log, recomputing mini-vertex degrees from
// scratch at every step.
Rational log_probability(ModelTag model,
                         const std::vector<std::uint32_t>& log) {
  if (log.empty() || log[0] != 1) return Rational(0);
  Rational p(1);
  for (std::size_t t = 1; t < log.size(); ++t) {
    // Tree T_t holds edges e_1..e_t on mini-vertices 1..t.
    std::vector<std::int64_t> deg(t + 2, 0);
    for (std::size_t i = 0; i < t; ++i) {
      deg[i + 1] += 1;
      deg[log[i]] += 1;
    }
    std::int64_t total = 0;
    for (std::size_t v = 1; v <= t; ++v) total += deg[v];
    if (model == ModelTag::TildePA) total -= 1;  // e_1 counts once
    if (model == ModelTag::TildePA) deg[1] -= 1;
    const std::uint32_t s = log[t];
    const auto step = static_cast<std::int64_t>(t);
    if (model == ModelTag::StandardPA) {
      if (total != 2 * step) return Rational(-1);
      if (s == t + 1)
        p *= Rational(1, 2 * step + 1);
      else
        p *= Rational(deg[s], 2 * step + 1);
    } else {
      if (total != 2 * step - 1) return Rational(-1);
      if (s > t) return Rational(0);
      p *= Rational(deg[s], 2 * step - 1);
    }
  }
  return p;
}

// Every sequence with targets[t] in 1..t (1-based t).
void all_sequences(std::uint32_t length,
                   std::vector<std::vector<std::uint32_t>>& out) {
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == length) {
      out.push_back(cur);
      return;
    }
    const auto t = static_cast<std::uint32_t>(cur.size()) + 1;
    for (std::uint32_t s = 1; s <= t; ++s) {
      cur.push_back(s);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

ArrivalLog make_log(ModelTag model, std::uint32_t h, std::uint32_t n,
                    std::vector<std::uint32_t> targets) {
  return ArrivalLog{model, h, n, std::move(targets)};
}

}  // namespace

TEST(Generate, SingleVertexStandard) {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    auto g = generate(ModelTag::StandardPA, 2, 1, Seed{seed}).graph.graph;
    EXPECT_EQ(g.vertex_count(), 1u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.loop_count(1), 2);
    EXPECT_EQ(g.degree(1), 4);
    EXPECT_EQ(g.volume(), 4);
  }
}

TEST(Generate, SingleVertexTilde) {
  for (std::uint64_t seed : {0ull, 5ull}) {
    auto g = generate(ModelTag::TildePA, 2, 1, Seed{seed}).graph.graph;
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.loop_count(1), 2);
    EXPECT_EQ(g.degree(1), 3);
    EXPECT_EQ(g.volume(), 3);
    EXPECT_TRUE(g.has_unit_loop());
  }
}

TEST(Generate, SecondEdgeProbabilities) {
  auto dist = exact_small_t_distribution(ModelTag::StandardPA, 1, 2);
  ASSERT_EQ(dist.size(), 2u);
  EXPECT_EQ(dist.at({1, 2}), Rational(1, 3));
  EXPECT_EQ(dist.at({1, 1}), Rational(2, 3));
}

TEST(Generate, RejectsZeroParameters) {
  EXPECT_THROW(generate(ModelTag::StandardPA, 0, 3, Seed{1}),
               std::invalid_argument);
  EXPECT_THROW(generate(ModelTag::TildePA, 2, 0, Seed{1}),
               std::invalid_argument);
}

TEST(Generate, DeterministicPerSeed) {
  for (auto model : {ModelTag::StandardPA, ModelTag::TildePA}) {
    auto a = generate(model, 3, 40, Seed{77});
    auto b = generate(model, 3, 40, Seed{77});
    auto c = generate(model, 3, 40, Seed{78});
    EXPECT_EQ(a.log, b.log);
    EXPECT_NE(a.log, c.log);
  }
}

TEST(Generate, LogRangeInvariant) {
  for (auto model : {ModelTag::StandardPA, ModelTag::TildePA})
    for (std::uint64_t s = 0; s < 50; ++s) {
      auto log = generate(model, 2, 15, Seed{s}).log;
      ASSERT_EQ(log.targets.size(), 30u);
      EXPECT_EQ(log.targets[0], 1u);
      for (std::uint32_t t = 2; t <= 30; ++t) {
        EXPECT_GE(log.targets[t - 1], 1u);
        EXPECT_LE(log.targets[t - 1],
                  model == ModelTag::StandardPA ? t : t - 1);
      }
    }
}

TEST(Generate, GraphInvariants) {
  for (auto model : {ModelTag::StandardPA, ModelTag::TildePA})
    for (std::uint32_t h : {1u, 2u, 3u, 5u})
      for (std::uint32_t n : {1u, 2u, 7u, 12u})
        for (std::uint64_t s = 0; s < 10; ++s) {
          auto g = generate(model, h, n, derive_seed(Seed{3}, s)).graph.graph;
          const std::int64_t vol =
              2 * std::int64_t{h} * n - (model == ModelTag::TildePA ? 1 : 0);
          EXPECT_EQ(g.volume(), vol);
          EXPECT_EQ(g.edge_count(), std::size_t{h} * n);
          EXPECT_GE(g.min_degree(), std::int64_t{h});
          // e(S) <= h|S| for every S
          for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
            auto S = mask_to_set(mask);
            EXPECT_LE(edge_boundary(g, S).e_inner,
                      std::int64_t{h} * static_cast<std::int64_t>(S.size()));
          }
        }
}

TEST(Merge, SingleVertexTwoLoops) {
  auto g = merge(make_log(ModelTag::StandardPA, 2, 1, {1, 1})).graph;
  EXPECT_EQ(g.loop_count(1), 2);
  EXPECT_EQ(g.degree(1), 4);
}

TEST(Merge, StandardFixture) {
  auto g = merge(make_log(ModelTag::StandardPA, 2, 2, {1, 1, 2, 1})).graph;
  EXPECT_EQ(g.loop_count(1), 2);
  EXPECT_EQ(g.loop_count(2), 0);
  ASSERT_EQ(g.neighbors(2).size(), 1u);
  EXPECT_EQ(g.neighbors(2)[0].vertex, 1u);
  EXPECT_EQ(g.neighbors(2)[0].multiplicity, 2);
  EXPECT_EQ(g.degree(1), 6);
  EXPECT_EQ(g.degree(2), 2);
  EXPECT_EQ(g.edges()[2].t, 3u);
}

TEST(Merge, TildeFixture) {
  auto g = merge(make_log(ModelTag::TildePA, 2, 2, {1, 1, 2, 3})).graph;
  EXPECT_EQ(g.degree(1), 4);
  EXPECT_EQ(g.degree(2), 3);
  EXPECT_EQ(g.degree(1) + g.degree(2), 7);
  EXPECT_EQ(g.volume(), 7);
}

TEST(Merge, RejectsInvalidLogs) {
  EXPECT_THROW(merge(make_log(ModelTag::StandardPA, 2, 2, {1, 1, 4, 1})),
               std::invalid_argument);
  EXPECT_THROW(merge(make_log(ModelTag::TildePA, 1, 2, {1, 2})),
               std::invalid_argument);
  EXPECT_THROW(merge(make_log(ModelTag::StandardPA, 1, 2, {2, 1})),
               std::invalid_argument);
  EXPECT_THROW(merge(make_log(ModelTag::StandardPA, 2, 2, {1, 1, 2})),
               std::invalid_argument);
}

TEST(SmallT, TildeSecondEdgeIsForced) {
  auto dist = exact_small_t_distribution(ModelTag::TildePA, 1, 2);
  ASSERT_EQ(dist.size(), 1u);
  EXPECT_EQ(dist.at({1, 1}), Rational(1));
}

TEST(SmallT, StandardThreeSteps) {
  auto dist = exact_small_t_distribution(ModelTag::StandardPA, 1, 3);
  EXPECT_EQ(dist.size(), 6u);
  Rational total(0);
  for (const auto& [log, p] : dist) total += p;
  EXPECT_EQ(total, Rational(1));
  EXPECT_EQ(dist.at({1, 1, 1}), Rational(2, 3) * Rational(3, 5));
  EXPECT_EQ(dist.at({1, 2, 3}), Rational(1, 15));
}

TEST(SmallT, MatchesStepProductOracle) {
  for (auto model : {ModelTag::StandardPA, ModelTag::TildePA})
    for (std::uint32_t t = 1; t <= 6; ++t) {
      auto dist = exact_small_t_distribution(model, 1, t);
      std::vector<std::vector<std::uint32_t>> seqs;
      all_sequences(t, seqs);
      std::size_t nonzero = 0;
      Rational total(0);
      for (const auto& s : seqs) {
        Rational p = log_probability(model, s);
        ASSERT_GE(p, Rational(0));
        total += p;
        if (p == Rational(0)) {
          EXPECT_EQ(dist.count(s), 0u);
          continue;
        }
        ++nonzero;
        ASSERT_EQ(dist.count(s), 1u);
        EXPECT_EQ(dist.at(s), p);
      }
      EXPECT_EQ(dist.size(), nonzero);
      EXPECT_EQ(total, Rational(1));
    }
}

TEST(SmallT, TooLongIsResourceError) {
  EXPECT_THROW(exact_small_t_distribution(ModelTag::StandardPA, 1,
                                          kMaxEnumeratedLogLength + 1),
               std::length_error);
}

TEST(SmallT, MonteCarloFrequenciesMatch) {
  constexpr std::uint64_t kTrials = 100000;
  for (auto model : {ModelTag::StandardPA, ModelTag::TildePA})
    for (std::uint32_t t = 2; t <= 4; ++t) {
      auto dist = exact_small_t_distribution(model, 1, t);
      std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
      for (std::uint64_t i = 0; i < kTrials; ++i) {
        Rng rng(derive_seed(Seed{2024 + t}, i));
        ++counts[sample_log(model, 1, t, rng).targets];
      }
      for (const auto& [log, count] : counts) EXPECT_EQ(dist.count(log), 1u);
      for (const auto& [log, p] : dist) {
        const double expect = p.to_double();
        const double freq = static_cast<double>(counts[log]) / kTrials;
        const double se = std::sqrt(expect * (1 - expect) / kTrials);
        EXPECT_LE(std::fabs(freq - expect), 4 * se)
            << to_string(model) << " t=" << t;
      }
    }
}

TEST(GraphJson, RoundTrip) {
  for (auto model : {ModelTag::StandardPA, ModelTag::TildePA}) {
    auto g = generate(model, 3, 9, Seed{11}).graph;
    auto j = graph_to_json(g);
    auto back = graph_from_json(json::parse(j.dump()));
    EXPECT_EQ(graph_to_json(back).dump(), j.dump());
    EXPECT_EQ(back.graph.volume(), g.graph.volume());
    for (Vertex v = 1; v <= 9; ++v)
      EXPECT_EQ(back.graph.degree(v), g.graph.degree(v));
  }
}

TEST(GraphJson, FieldOrderAndErrors) {
  auto g = merge(make_log(ModelTag::TildePA, 2, 2, {1, 1, 2, 3}), Seed{5});
  EXPECT_EQ(graph_to_json(g).dump(),
            R"({"model":"tilde","h":2,"n":2,"seed":5,)"
            R"("edges":[[1,1,1],[1,1,2],[2,1,3],[2,2,4]]})");
  auto j = graph_to_json(g);
  j["edges"].erase(j["edges"].begin());
  EXPECT_THROW(graph_from_json(j), std::invalid_argument);
  j = graph_to_json(g);
  j["model"] = "other";
  EXPECT_THROW(graph_from_json(j), std::invalid_argument);
}

TEST(Rng, LemireBoundsAndSeeds) {
  Rng rng(Seed{1});
  for (std::uint64_t b : {1ull, 2ull, 3ull, 1000ull})
    for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(b), b);
  EXPECT_THROW(rng.below(0), std::invalid_argument);
  EXPECT_NE(derive_seed(Seed{1}, 0), derive_seed(Seed{1}, 1));
  EXPECT_NE(derive_seed(Seed{1}, 0), derive_seed(Seed{2}, 0));
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}
