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

// The two preferential attachment multigraph models.
//
// Both grow a "mini-vertex tree" one edge at a time: e_1 is a loop on
// mini-vertex 1 and e_{t+1} joins the new mini-vertex t+1 to an existing one
// chosen with probability proportional to degree. Mini-vertices
// h(i-1)+1 .. hi are then merged into vertex i, keeping loops and multiple
// edges.
//
//   StandardPA: e_1 has degree 2; at step t+1 the target is s <= t with
//               probability deg(s)/(2t+1), or t+1 itself (a loop) with
//               probability 1/(2t+1).
//   TildePA:    e_1 has degree 1; the target is s <= t with probability
//               deg(s)/(2t-1). No loops are created at the mini level after
//               e_1, but merging can still produce them.

#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paexp/multigraph.hpp"
#include "paexp/rational.hpp"
#include "paexp/rng.hpp"

namespace paexp {

enum class ModelTag { StandardPA, TildePA };

inline std::string_view to_string(ModelTag model) {
  return model == ModelTag::StandardPA ? "standard" : "tilde";
}

inline ModelTag parse_model(std::string_view name) {
  if (name == "standard") return ModelTag::StandardPA;
  if (name == "tilde") return ModelTag::TildePA;
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected standard or tilde)");
}

/// Ordered record of the mini-vertex process: targets[t-1] is the mini-vertex
/// that e_t attaches mini-vertex t to (targets[0] == 1 is the loop e_1).
struct ArrivalLog {
  ModelTag model = ModelTag::StandardPA;
  std::uint32_t h = 1;
  std::uint32_t n = 1;
  std::vector<std::uint32_t> targets;

  friend bool operator==(const ArrivalLog&, const ArrivalLog&) = default;
};

struct PAGraph {
  ModelTag model = ModelTag::StandardPA;
  std::uint32_t h = 1;
  Seed seed{};
  Multigraph graph;

  [[nodiscard]] std::size_t n() const { return graph.vertex_count(); }
};

struct GeneratedGraph {
  ArrivalLog log;
  PAGraph graph;
};

/// Graph vertex that mini-vertex m (1-based) merges into.
constexpr Vertex vertex_of(std::uint32_t mini, std::uint32_t h) {
  return (mini - 1) / h + 1;
}

inline void validate_log(const ArrivalLog& log) {
  if (log.h < 1 || log.n < 1)
    throw std::invalid_argument("arrival log needs h >= 1 and n >= 1");
  if (log.targets.size() != std::size_t{log.h} * log.n)
    throw std::invalid_argument("arrival log length must be h*n");
  if (log.targets[0] != 1)
    throw std::invalid_argument("e_1 must be the loop on mini-vertex 1");
  for (std::uint32_t t = 2; t <= log.targets.size(); ++t) {
    std::uint32_t s = log.targets[t - 1];
    std::uint32_t hi = log.model == ModelTag::StandardPA ? t : t - 1;
    if (s < 1 || s > hi)
      throw std::invalid_argument("target of e_" + std::to_string(t) +
                                  " out of range: " + std::to_string(s));
  }
}

/// Merges mini-vertex blocks of size h into graph vertices.
inline PAGraph merge(const ArrivalLog& log, Seed seed = {}) {
  validate_log(log);
  std::vector<Edge> edges;
  edges.reserve(log.targets.size());
  for (std::uint32_t t = 1; t <= log.targets.size(); ++t) {
    edges.push_back(
        {vertex_of(t, log.h), vertex_of(log.targets[t - 1], log.h), t});
  }
  return PAGraph{
      log.model, log.h, seed,
      Multigraph(log.n, std::move(edges), log.model == ModelTag::TildePA)};
}

template <class R>
concept UniformSource = requires(R& r, std::uint64_t bound) {
  { r.below(bound) } -> std::convertible_to<std::uint64_t>;
};

/// Samples the mini-vertex process.
///
/// Keeps the list of edge endpoints placed so far, so a uniform pick from it
/// is a degree-proportional pick of a mini-vertex. StandardPA starts from
/// [1, 1] and draws from 2t+1 slots, the last meaning "loop on the new
/// mini-vertex"; TildePA starts from [1] (the unit loop) and draws from the
/// 2t-1 endpoints.
template <UniformSource R>
ArrivalLog sample_log(ModelTag model, std::uint32_t h, std::uint32_t n,
                      R& rng) {
  if (h < 1 || n < 1)
    throw std::invalid_argument("generate needs h >= 1 and n >= 1");
  const std::uint64_t total = std::uint64_t{h} * n;
  ArrivalLog log{model, h, n, {}};
  log.targets.reserve(total);
  log.targets.push_back(1);
  std::vector<std::uint32_t> endpoints;
  endpoints.reserve(2 * total);
  if (model == ModelTag::StandardPA)
    endpoints = {1, 1};
  else
    endpoints = {1};
  for (std::uint32_t t = 1; t < total; ++t) {
    const std::uint32_t fresh = t + 1;
    std::uint32_t target = 0;
    if (model == ModelTag::StandardPA) {
      auto r = rng.below(2 * std::uint64_t{t} + 1);
      target = r < 2 * std::uint64_t{t} ? endpoints[r] : fresh;
    } else {
      target = endpoints[rng.below(endpoints.size())];
    }
    log.targets.push_back(target);
    endpoints.push_back(fresh);
    endpoints.push_back(target);
  }
  return log;
}

inline GeneratedGraph generate(ModelTag model, std::uint32_t h, std::uint32_t n,
                               Seed seed) {
  Rng rng(seed);
  ArrivalLog log = sample_log(model, h, n, rng);
  PAGraph graph = merge(log, seed);
  return {std::move(log), std::move(graph)};
}

// ---------------------------------------------------------------------------
// Exact enumeration of the mini-vertex process.

inline constexpr std::uint32_t kMaxEnumeratedLogLength = 9;

/// Common denominator of all log probabilities of length `length`:
/// prod_{t=1}^{length-1} (2t+1) for StandardPA, (2t-1) for TildePA.
inline std::int64_t log_denominator(ModelTag model, std::uint32_t length) {
  std::int64_t d = 1;
  for (std::int64_t t = 1; t < length; ++t)
    d *= model == ModelTag::StandardPA ? 2 * t + 1 : 2 * t - 1;
  return d;
}

/// Calls visit(targets, weight) for every log of the given length with
/// nonzero probability; probability = weight / log_denominator(model, length).
template <class Visit>
void for_each_log(ModelTag model, std::uint32_t length, Visit&& visit) {
  if (length < 1) throw std::invalid_argument("log length must be >= 1");
  if (length > kMaxEnumeratedLogLength)
    throw std::length_error("log enumeration limited to length " +
                            std::to_string(kMaxEnumeratedLogLength));
  std::vector<std::uint32_t> targets{1};
  std::vector<std::int64_t> degree(length + 1, 0);
  degree[1] = model == ModelTag::StandardPA ? 2 : 1;

  std::function<void(std::uint32_t, std::int64_t)> step =
      [&](std::uint32_t t, std::int64_t weight) {
        if (t == length) {
          visit(std::span<const std::uint32_t>(targets), weight);
          return;
        }
        const std::uint32_t fresh = t + 1;
        for (std::uint32_t s = 1; s <= t; ++s) {
          if (degree[s] == 0) continue;
          const std::int64_t w = degree[s];
          ++degree[s];
          degree[fresh] = 1;
          targets.push_back(s);
          step(fresh, weight * w);
          targets.pop_back();
          degree[fresh] = 0;
          --degree[s];
        }
        if (model == ModelTag::StandardPA) {
          degree[fresh] = 2;
          targets.push_back(fresh);
          step(fresh, weight);
          targets.pop_back();
          degree[fresh] = 0;
        }
      };
  step(1, 1);
}

using LogDistribution = std::map<std::vector<std::uint32_t>, Rational>;

/// Exact probability of every arrival log of length t_max. The merge
/// parameter h does not affect the mini-level process; it is validated only.
inline LogDistribution exact_small_t_distribution(ModelTag model,
                                                  std::uint32_t h,
                                                  std::uint32_t t_max) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  LogDistribution table;
  const std::int64_t den = log_denominator(model, t_max);
  for_each_log(model, t_max,
               [&](std::span<const std::uint32_t> targets, std::int64_t w) {
                 table.emplace(
                     std::vector<std::uint32_t>(targets.begin(), targets.end()),
                     Rational(w, den));
               });
  return table;
}

}  // namespace paexp
