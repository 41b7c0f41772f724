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

#include <sstream>
#include <string>

#include "json.hpp"
#include "paexp/bound_certifier.hpp"
#include "paexp/cut_analysis.hpp"
#include "paexp/experiment.hpp"
#include "paexp/lemma2.hpp"
#include "paexp/modularity.hpp"

namespace paexp {

inline nlohmann::ordered_json to_json(const CutReport& r) {
  nlohmann::ordered_json j;
  j["subset"] = r.subset;
  j["e_inner"] = r.e_inner;
  j["e_boundary"] = r.e_boundary;
  j["vol"] = r.vol;
  j["ratio"] = r.ratio.str();
  return j;
}

inline nlohmann::ordered_json to_json(const ExpansionResult& r) {
  nlohmann::ordered_json j;
  j["u"] = r.u.str();
  j["alpha"] = r.alpha ? r.alpha->str() : std::string("inf");
  j["witness"] = r.witness ? nlohmann::ordered_json(*r.witness)
                           : nlohmann::ordered_json(nullptr);
  j["method"] =
      r.method == ExpansionMethod::Exhaustive ? "exhaustive" : "sampled";
  return j;
}

inline nlohmann::ordered_json to_json(const ModularityScore& s) {
  nlohmann::ordered_json j;
  j["q"] = s.q.str();
  j["edge_contribution"] = s.edge_contribution.str();
  j["degree_tax"] = s.degree_tax.str();
  return j;
}

inline nlohmann::ordered_json to_json(const BoundCertificate& c) {
  auto num = [](double x) {
    return nlohmann::ordered_json(std::stod(format_double(x)));
  };
  nlohmann::ordered_json j;
  j["bound"] = num(c.bound);
  j["minimizer_u"] = num(c.minimizer_u);
  j["minimizer_delta"] = num(c.minimizer_delta);
  j["grid_step"] = num(c.grid_step);
  j["delta_precision"] = num(c.delta_precision);
  j["raw_bound"] = num(c.raw_bound);
  j["grid_points"] = c.trace.size();
  return j;
}

/// Columns u_s, delta_hat, term_value.
inline std::string trace_csv(const BoundCertificate& c) {
  std::ostringstream out;
  out << "u_s,delta_hat,term_value\n";
  for (const TracePoint& p : c.trace)
    out << format_double(p.u) << ',' << format_double(p.delta_hat) << ','
        << format_double(p.term) << '\n';
  return out.str();
}

inline nlohmann::ordered_json to_json(const MCEstimate& e) {
  auto num = [](double x) {
    return nlohmann::ordered_json(std::stod(format_double(x)));
  };
  nlohmann::ordered_json j;
  j["trials"] = e.trials;
  j["hits"] = e.hits;
  j["p_hat"] = num(e.p_hat);
  j["std_err"] = num(e.std_err);
  j["bound"] = e.bound.str();
  return j;
}

}  // namespace paexp
