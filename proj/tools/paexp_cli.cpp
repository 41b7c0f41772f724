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

// paexp: generate preferential attachment graphs, measure expansion and
// modularity, and check the bounds relating them.
//
// Exit codes: 0 success, 1 a deterministic inequality was violated,
// 2 usage or input error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "paexp/json_io.hpp"
#include "paexp/paexp.hpp"

namespace {

using paexp::Rational;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

// Like dump(2), but arrays of scalars stay on one line.
void pretty(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  auto flat = [](const json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + json(it.key()).dump() + ": ";
      pretty(it.value(), out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array() && !j.empty() && !flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty(j[i], out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else {
    out += j.dump();
  }
}

std::string pretty(const json& j) {
  std::string out;
  pretty(j, out, 0);
  return out + "\n";
}

void emit(const json& j, const std::string& path) {
  const std::string text = pretty(j);
  if (path.empty())
    std::cout << text;
  else
    paexp::write_text_file(path, text);
}

std::vector<paexp::Vertex> parse_id_list(const std::string& text) {
  std::vector<paexp::Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(static_cast<paexp::Vertex>(std::stoul(item)));
  return out;
}

struct GenOptions {
  std::string model = "standard";
  std::uint32_t h = 2;
  std::uint32_t n = 10;
  std::uint64_t seed = 1;
  std::string out;
  bool with_log = false;
};

int run_gen(const GenOptions& o) {
  auto [log, graph] = paexp::generate(paexp::parse_model(o.model), o.h, o.n,
                                      paexp::Seed{o.seed});
  json j = paexp::graph_to_json(graph);
  if (o.with_log) j["targets"] = log.targets;
  emit(j, o.out);
  return kOk;
}

struct ExpandOptions {
  std::string graph;
  std::string u = "1/2";
  std::size_t limit = paexp::kDefaultExhaustiveLimit;
  std::size_t sampled = 0;
  std::uint64_t seed = 1;
  bool profile = false;
  std::string subset;
  std::string out;
};

int run_expand(const ExpandOptions& o) {
  const paexp::PAGraph g =
      paexp::graph_from_json(paexp::read_json_file(o.graph));
  if (!o.subset.empty()) {
    emit(paexp::to_json(paexp::edge_boundary(g.graph, parse_id_list(o.subset))),
         o.out);
    return kOk;
  }
  if (o.profile) {
    json rows = json::array();
    for (const auto& e : paexp::expansion_profile(g.graph, o.limit)) {
      json r;
      r["k"] = e.k;
      r["alpha"] = e.alpha.str();
      r["witness"] = e.witness;
      rows.push_back(r);
    }
    emit(rows, o.out);
    return kOk;
  }
  const Rational u = Rational::parse(o.u);
  const paexp::ExpansionResult r =
      o.sampled > 0 ? paexp::sampled_expansion(g.graph, u, paexp::Seed{o.seed},
                                               {o.sampled, true, 10000})
                    : paexp::exact_expansion(g.graph, u, o.limit);
  emit(paexp::to_json(r), o.out);
  return kOk;
}

struct ModOptions {
  std::string graph;
  std::string partition;
  bool greedy = false;
  bool bounds = false;
  std::uint64_t seed = 1;
  std::size_t limit = paexp::kDefaultExactModularityLimit;
  std::string out;
};

int run_mod(const ModOptions& o) {
  const paexp::PAGraph g =
      paexp::graph_from_json(paexp::read_json_file(o.graph));
  const paexp::Multigraph& mg = g.graph;
  json j;
  int status = kOk;
  if (!o.partition.empty()) {
    paexp::Partition p =
        paexp::partition_from_json(g.n(), paexp::read_json_file(o.partition));
    paexp::ModularityScore s = paexp::modularity_score(mg, p);
    j["score"] = paexp::to_json(s);
    Rational p2 = paexp::prop2_bound(mg, p);
    j["prop2_bound"] = p2.str();
    if (p2 < s.q) status = kViolation;
  } else {
    paexp::OptimalModularity best =
        o.greedy ? paexp::greedy_modularity(mg, paexp::Seed{o.seed})
                 : paexp::exact_modularity(mg, o.limit);
    j["q"] = best.q.str();
    j["method"] = o.greedy ? "greedy" : "exact";
    j["partition"] = paexp::partition_to_json(best.argmax);
    if (o.bounds) {
      paexp::ExpansionResult alpha = paexp::exact_expansion(mg, Rational(1, 2));
      Rational a = alpha.alpha.value_or(Rational(g.h));
      Rational l1 = paexp::lemma1_bound(g, a);
      Rational p1 = paexp::prop1_bound(g, a);
      Rational t3 = paexp::theorem3_bound(g);
      j["alpha"] = alpha.alpha ? alpha.alpha->str() : "inf";
      j["lemma1_bound"] = l1.str();
      j["prop1_bound"] = p1.str();
      j["theorem3_bound"] = t3.str();
      if (l1 < best.q || t3 < best.q) status = kViolation;
    }
  }
  emit(j, o.out);
  return status;
}

struct CertifyOptions {
  double grid_step = 1e-4;
  double precision = 1e-5;
  std::string trace;
  std::string out;
};

int run_certify(const CertifyOptions& o) {
  paexp::BoundCertificate cert = paexp::certify_modularity_bound(
      o.grid_step, o.precision, !o.trace.empty());
  json j = paexp::to_json(cert);
  j["corollary2_value"] = paexp::corollary2_value(0.03418);
  j["corollary2_holds"] = paexp::corollary2_constant_check(0.03418);
  if (!o.trace.empty()) paexp::write_text_file(o.trace, paexp::trace_csv(cert));
  emit(j, o.out);
  return kOk;
}

struct Lemma2Options {
  std::string model = "standard";
  std::uint32_t h = 2;
  std::uint32_t n = 3;
  std::string spec;
  std::string S;
  std::string A;
  std::uint64_t trials = 0;  // 0: 100000, or none with --exact
  std::uint64_t seed = 1;
  bool exact = false;
  bool scan = false;
  std::string out;
};

int run_lemma2(const Lemma2Options& o) {
  const paexp::ModelTag model = paexp::parse_model(o.model);
  json j;
  j["model"] = o.model;
  j["h"] = o.h;
  j["n"] = o.n;
  if (o.scan) {
    paexp::Lemma2Scan scan = paexp::lemma2_exhaustive(model, o.h, o.n);
    j["checked"] = scan.checked;
    j["nonzero"] = scan.nonzero;
    j["violations"] = scan.violations.size();
    j["max_probability_over_bound"] = scan.tightest.str();
    emit(j, o.out);
    return scan.violations.empty() ? kOk : kViolation;
  }
  std::vector<paexp::Vertex> S;
  std::vector<std::uint32_t> A;
  if (!o.spec.empty()) {
    json s = paexp::read_json_file(o.spec);
    S = s.at("S").get<std::vector<paexp::Vertex>>();
    A = s.at("A").get<std::vector<std::uint32_t>>();
  } else {
    S = parse_id_list(o.S);
    for (auto t : parse_id_list(o.A)) A.push_back(t);
  }
  paexp::CutEventSpec spec = paexp::make_cut_event_spec(o.h, o.n, S, A);
  j["S"] = spec.S;
  j["A"] = spec.A;
  const Rational bound =
      paexp::lemma2_bound(o.h, o.n, static_cast<std::int64_t>(spec.S.size()),
                          static_cast<std::int64_t>(spec.A.size()));
  j["bound"] = bound.str();
  int status = kOk;
  if (o.exact) {
    Rational p = paexp::exact_cut_event(model, o.h, o.n, spec);
    j["probability"] = p.str();
    if (bound < p) status = kViolation;
  }
  if (!o.exact || o.trials > 0) {
    paexp::MCEstimate est = paexp::estimate_cut_event(
        model, o.h, o.n, spec, o.trials > 0 ? o.trials : 100000,
        paexp::Seed{o.seed});
    j["estimate"] = paexp::to_json(est);
    if (est.p_hat > bound.to_double() + 3.0 * est.std_err) status = kViolation;
  }
  emit(j, o.out);
  return status;
}

struct SweepOptions {
  std::string model = "standard";
  std::vector<std::uint32_t> h{2};
  std::vector<std::uint32_t> n{8};
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> tasks{"expansion"};
  std::size_t limit = paexp::kDefaultExhaustiveLimit;
  std::string config;
  std::string json_out;
  std::string csv_out;
};

int run_sweep(const SweepOptions& o) {
  paexp::ExperimentConfig cfg;
  cfg.model = paexp::parse_model(o.model);
  cfg.h_list = o.h;
  cfg.n_list = o.n;
  cfg.trials = o.trials;
  cfg.root_seed = paexp::Seed{o.seed};
  cfg.tasks = paexp::parse_tasks(o.tasks);
  cfg.exhaustive_limit = o.limit;
  if (!o.config.empty())
    paexp::apply_config_json(cfg, paexp::read_json_file(o.config));
  paexp::ExperimentReport report = paexp::run_experiment(cfg);
  json j = paexp::report_json(report);
  if (!o.csv_out.empty())
    paexp::write_text_file(o.csv_out, paexp::report_csv(report));
  if (!o.json_out.empty()) paexp::write_text_file(o.json_out, pretty(j));
  std::cout << pretty(j["summary"]);
  return report.failed() ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preferential attachment expansion and modularity toolkit",
               "paexp"};
  app.set_help_flag("--help", "Print help and exit");
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph as JSON");
  gen_cmd->add_option("--model", gen.model, "standard or tilde")
      ->check(CLI::IsMember({"standard", "tilde"}));
  gen_cmd->add_option("--h", gen.h, "Edges per vertex")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "Vertex count")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");
  gen_cmd->add_flag("--with-log", gen.with_log, "Include the arrival log");

  ExpandOptions ex;
  auto* ex_cmd = app.add_subcommand("expand", "Edge expansion of a graph file");
  ex_cmd->add_option("--graph", ex.graph, "Graph JSON")->required();
  ex_cmd->add_option("--u", ex.u, "Size bound u in (0, 1/2], e.g. 1/2 or 0.25");
  ex_cmd->add_option("--limit", ex.limit, "Exhaustive vertex limit");
  ex_cmd->add_option("--sampled", ex.sampled,
                     "Use N sampled subsets (upper estimate) instead");
  ex_cmd->add_option("--seed", ex.seed, "Seed for --sampled");
  ex_cmd->add_flag("--profile", ex.profile, "Print alpha_{k/n} for all k");
  ex_cmd->add_option("--subset", ex.subset,
                     "Report the cut of a comma-separated vertex list");
  ex_cmd->add_option("--out", ex.out, "Output file");

  ModOptions mod;
  auto* mod_cmd = app.add_subcommand("mod", "Modularity of a graph file");
  mod_cmd->add_option("--graph", mod.graph, "Graph JSON")->required();
  mod_cmd->add_option("--partition", mod.partition,
                      "Score this partition (JSON list of lists)");
  mod_cmd->add_flag("--greedy", mod.greedy, "Agglomerative lower bound");
  mod_cmd->add_flag("--bounds", mod.bounds,
                    "Also evaluate the expansion-based upper bounds");
  mod_cmd->add_option("--seed", mod.seed, "Tie-break seed for --greedy");
  mod_cmd->add_option("--limit", mod.limit, "Exact enumeration vertex limit");
  mod_cmd->add_option("--out", mod.out, "Output file");

  CertifyOptions cert;
  auto* cert_cmd =
      app.add_subcommand("certify", "Grid certification of the q* bound");
  cert_cmd->add_option("--grid-step", cert.grid_step, "u grid step");
  cert_cmd->add_option("--precision", cert.precision, "delta precision");
  cert_cmd->add_option("--trace", cert.trace, "Write per-point CSV trace");
  cert_cmd->add_option("--out", cert.out, "Certificate JSON file");

  Lemma2Options l2;
  auto* l2_cmd =
      app.add_subcommand("lemma2", "Check the cut-event probability bound");
  l2_cmd->add_option("--model", l2.model)
      ->check(CLI::IsMember({"standard", "tilde"}));
  l2_cmd->add_option("--h", l2.h)->check(CLI::PositiveNumber);
  l2_cmd->add_option("--n", l2.n)->check(CLI::PositiveNumber);
  l2_cmd->add_option("--spec", l2.spec, R"(JSON {"S": [...], "A": [...]})");
  l2_cmd->add_option("--S", l2.S, "Comma-separated vertex set");
  l2_cmd->add_option("--A", l2.A, "Comma-separated arrival indices");
  l2_cmd->add_option("--trials", l2.trials, "Monte Carlo trials");
  l2_cmd->add_option("--seed", l2.seed);
  l2_cmd->add_flag("--exact", l2.exact, "Exact probability by enumeration");
  l2_cmd->add_flag("--scan", l2.scan, "Exhaustive check over all (S, A)");
  l2_cmd->add_option("--out", l2.out);

  SweepOptions sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Run an experiment sweep");
  sw_cmd->add_option("--model", sw.model)
      ->check(CLI::IsMember({"standard", "tilde"}));
  sw_cmd->add_option("--h", sw.h, "h values")->delimiter(',');
  sw_cmd->add_option("--n", sw.n, "n values")->delimiter(',');
  sw_cmd->add_option("--trials", sw.trials);
  sw_cmd->add_option("--seed", sw.seed, "Root seed");
  sw_cmd->add_option("--tasks", sw.tasks, "expansion,modularity,bounds,lemma2")
      ->delimiter(',');
  sw_cmd->add_option("--limit", sw.limit, "Exhaustive expansion limit");
  sw_cmd->add_option("--config", sw.config, "JSON config overriding flags");
  sw_cmd->add_option("--json", sw.json_out, "Report JSON file");
  sw_cmd->add_option("--csv", sw.csv_out, "Report CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*ex_cmd) return run_expand(ex);
    if (*mod_cmd) return run_mod(mod);
    if (*cert_cmd) return run_certify(cert);
    if (*l2_cmd) return run_lemma2(l2);
    if (*sw_cmd) return run_sweep(sw);
  } catch (const std::exception& e) {
    std::cerr << "paexp: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
