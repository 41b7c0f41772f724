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

// Graph file format:
//
//   {"model":"standard"|"tilde","h":int,"n":int,"seed":uint64,
//    "edges":[[u,v,t],...]}
//
// Vertices are 1-based, loops have u == v, and t is the arrival index. Field
// order is fixed. For model "tilde" the edge with t == 1 is the unit loop.

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "paexp/multigraph.hpp"
#include "paexp/pa_models.hpp"

namespace paexp {

using json = nlohmann::ordered_json;

inline json graph_to_json(const PAGraph& g) {
  json j;
  j["model"] = std::string(to_string(g.model));
  j["h"] = g.h;
  j["n"] = g.n();
  j["seed"] = g.seed.value;
  json edges = json::array();
  for (const Edge& e : g.graph.edges()) edges.push_back({e.u, e.v, e.t});
  j["edges"] = std::move(edges);
  return j;
}

inline PAGraph graph_from_json(const json& j) {
  PAGraph g;
  g.model = parse_model(j.at("model").get<std::string>());
  g.h = j.at("h").get<std::uint32_t>();
  auto n = j.at("n").get<std::uint32_t>();
  g.seed = Seed{j.at("seed").get<std::uint64_t>()};
  if (g.h < 1 || n < 1) throw std::invalid_argument("graph needs h, n >= 1");
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("edge entries must be [u, v, t]");
    edges.push_back(
        {e[0].get<Vertex>(), e[1].get<Vertex>(), e[2].get<std::uint32_t>()});
  }
  if (edges.size() != std::size_t{g.h} * n)
    throw std::invalid_argument("graph must have exactly h*n edges");
  g.graph = Multigraph(n, std::move(edges), g.model == ModelTag::TildePA);
  return g;
}

inline json vertex_set_to_json(const VertexSet& s) { return json(s); }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace paexp
