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

// Experiment sweeps over generated graphs and their reports.
//
// Trial i of a sweep (counting over h_list, then n_list, then trials, in
// that order) uses graph seed derive_seed(root_seed, i). Rows are assembled
// in that order whatever the thread count, so identical configs produce
// byte-identical reports.
//
// Deterministic inequalities (volume identity, minimum degree, q* below the
// expansion-based bounds, the cut-probability bound on enumerable sizes) are
// counted as violations and fail the run. Asymptotic statements (alpha >=
// 0.03418 h, q* <= 0.92383 with high probability) are only reported as
// frequencies: small graphs may legitimately miss them.

#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "paexp/cut_analysis.hpp"
#include "paexp/lemma2.hpp"
#include "paexp/modularity.hpp"
#include "paexp/pa_models.hpp"
#include "paexp/parallel.hpp"
#include "paexp/rational.hpp"
#include "paexp/rng.hpp"

namespace paexp {

inline constexpr double kExpansionConstant = 0.03418;
inline constexpr double kModularityConstant = 0.92383;

struct TaskSet {
  bool expansion = false;
  bool modularity = false;
  bool bounds = false;
  bool lemma2 = false;

  [[nodiscard]] bool empty() const {
    return !(expansion || modularity || bounds || lemma2);
  }
};

inline TaskSet parse_tasks(const std::vector<std::string>& names) {
  TaskSet t;
  for (const auto& name : names) {
    if (name == "expansion")
      t.expansion = true;
    else if (name == "modularity")
      t.modularity = true;
    else if (name == "bounds")
      t.bounds = true;
    else if (name == "lemma2")
      t.lemma2 = true;
    else
      throw std::invalid_argument("unknown task '" + name + "'");
  }
  return t;
}

struct ExperimentConfig {
  ModelTag model = ModelTag::StandardPA;
  std::vector<std::uint32_t> h_list{2};
  std::vector<std::uint32_t> n_list{8};
  std::uint64_t trials = 1;
  Seed root_seed{1};
  TaskSet tasks{true, false, false, false};
  std::size_t exhaustive_limit = kDefaultExhaustiveLimit;
  std::size_t exact_modularity_limit = kDefaultExactModularityLimit;
  std::size_t sampled_trials = 64;
  unsigned threads = 0;  // 0: PAEXP_THREADS or hardware concurrency

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (tasks.empty()) throw std::invalid_argument("task list is empty");
    if (h_list.empty() || n_list.empty())
      throw std::invalid_argument("h and n lists must be nonempty");
    for (auto h : h_list)
      if (h < 1) throw std::invalid_argument("h must be >= 1");
    for (auto n : n_list)
      if (n < 1) throw std::invalid_argument("n must be >= 1");
  }
};

struct ReportRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint32_t h = 0;
  std::uint32_t n = 0;
  ModelTag model = ModelTag::StandardPA;
  std::optional<Rational> alpha;  // absent: not computed or +inf
  std::string alpha_method;       // "exact", "sampled", "inf" or ""
  std::optional<VertexSet> witness;
  std::optional<Rational> q;
  std::string q_method;  // "exact", "greedy" or ""
  std::optional<Rational> theorem3_bound;
  std::optional<Rational> lemma1_bound;
  std::string violations;  // ';'-separated names, empty when clean

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ReportSummary {
  std::uint64_t rows = 0;
  std::optional<double> min_alpha_over_h;
  std::optional<double> mean_alpha_over_h;
  std::optional<Rational> max_q;
  std::uint64_t alpha_rows = 0;
  std::uint64_t alpha_at_least_constant = 0;  // alpha >= 0.03418 h
  std::uint64_t q_rows = 0;
  std::uint64_t q_at_most_constant = 0;  // q <= 0.92383
  std::uint64_t violations = 0;          // rows with any violation
  std::uint64_t lemma2_cases = 0;
  std::uint64_t lemma2_violations = 0;
  std::uint64_t lemma2_skipped = 0;  // (h, n) beyond enumeration
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  ReportSummary summary;

  [[nodiscard]] bool failed() const {
    return summary.violations > 0 || summary.lemma2_violations > 0;
  }
};

namespace detail {

inline void add_violation(std::string& list, const char* name) {
  if (!list.empty()) list += ';';
  list += name;
}

inline ReportRow run_trial(const ExperimentConfig& cfg, std::uint64_t index,
                           std::uint32_t h, std::uint32_t n) {
  const Seed seed = derive_seed(cfg.root_seed, index);
  ReportRow row;
  row.trial = index;
  row.seed = seed.value;
  row.h = h;
  row.n = n;
  row.model = cfg.model;
  const PAGraph g = generate(cfg.model, h, n, seed).graph;
  const Multigraph& mg = g.graph;

  const std::int64_t expected_vol =
      2 * std::int64_t{h} * n - (cfg.model == ModelTag::TildePA ? 1 : 0);
  if (mg.volume() != expected_vol) add_violation(row.violations, "volume");
  if (mg.edge_count() != std::size_t{h} * n)
    add_violation(row.violations, "edge_count");
  if (mg.min_degree() < h) add_violation(row.violations, "min_degree");

  const bool exact_alpha = n <= cfg.exhaustive_limit;
  if (cfg.tasks.expansion || cfg.tasks.bounds) {
    ExpansionResult r =
        exact_alpha
            ? exact_expansion(mg, Rational(1, 2), cfg.exhaustive_limit)
            : sampled_expansion(mg, Rational(1, 2), derive_seed(seed, 1),
                                {cfg.sampled_trials, true, 10000});
    row.alpha = r.alpha;
    row.witness = r.witness;
    row.alpha_method = r.infinite() ? "inf" : exact_alpha ? "exact" : "sampled";
  }
  std::optional<Partition> argmax;
  if (cfg.tasks.modularity) {
    if (n <= cfg.exact_modularity_limit) {
      auto best = exact_modularity(mg, cfg.exact_modularity_limit);
      row.q = best.q;
      row.q_method = "exact";
      argmax = std::move(best.argmax);
    } else {
      auto best = greedy_modularity(mg, derive_seed(seed, 2));
      row.q = best.q;
      row.q_method = "greedy";
      argmax = std::move(best.argmax);
    }
    if (*row.q < Rational(0)) add_violation(row.violations, "q_negative");
    if (mg.edge_count() > 0 && prop2_bound(mg, *argmax) < *row.q)
      add_violation(row.violations, "prop2");
  }
  // Bounds computed from a sampled (upper) estimate of alpha would not be
  // valid upper bounds on q*, so they need the exact profile.
  if (cfg.tasks.bounds && exact_alpha) {
    row.lemma1_bound = lemma1_bound(mg, h, row.alpha.value_or(Rational(h)));
    row.theorem3_bound = theorem3_bound(g);
    if (row.q) {
      if (*row.lemma1_bound < *row.q) add_violation(row.violations, "lemma1");
      if (*row.theorem3_bound < *row.q)
        add_violation(row.violations, "theorem3");
    }
  }
  return row;
}

}  // namespace detail

/// Runs every trial of the sweep. Deterministic given the config.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Job {
    std::uint64_t index;
    std::uint32_t h;
    std::uint32_t n;
  };
  std::vector<Job> jobs;
  std::uint64_t index = 0;
  for (auto h : cfg.h_list)
    for (auto n : cfg.n_list)
      for (std::uint64_t t = 0; t < cfg.trials; ++t)
        jobs.push_back({index++, h, n});

  ExperimentReport report;
  report.config = cfg;
  const bool per_graph =
      cfg.tasks.expansion || cfg.tasks.modularity || cfg.tasks.bounds;
  if (per_graph) {
    report.rows.resize(jobs.size());
    parallel_for(
        jobs.size(),
        [&](std::size_t i) {
          report.rows[i] =
              detail::run_trial(cfg, jobs[i].index, jobs[i].h, jobs[i].n);
        },
        cfg.threads == 0 ? thread_count() : cfg.threads);
  }

  ReportSummary& s = report.summary;
  s.rows = report.rows.size();
  double alpha_sum = 0.0;
  for (const ReportRow& row : report.rows) {
    if (!row.violations.empty()) ++s.violations;
    if (row.alpha) {
      const double ratio = row.alpha->to_double() / row.h;
      ++s.alpha_rows;
      alpha_sum += ratio;
      if (!s.min_alpha_over_h || ratio < *s.min_alpha_over_h)
        s.min_alpha_over_h = ratio;
      if (*row.alpha >= Rational::parse("0.03418") * Rational(row.h))
        ++s.alpha_at_least_constant;
    }
    if (row.q) {
      ++s.q_rows;
      if (!s.max_q || *s.max_q < *row.q) s.max_q = *row.q;
      if (*row.q <= Rational::parse("0.92383")) ++s.q_at_most_constant;
    }
  }
  if (s.alpha_rows > 0)
    s.mean_alpha_over_h = alpha_sum / static_cast<double>(s.alpha_rows);

  if (cfg.tasks.lemma2) {
    for (auto h : cfg.h_list) {
      for (auto n : cfg.n_list) {
        if (std::uint64_t{h} * n > 8) {
          ++s.lemma2_skipped;
          continue;
        }
        Lemma2Scan scan = lemma2_exhaustive(cfg.model, h, n);
        s.lemma2_cases += scan.checked;
        s.lemma2_violations += scan.violations.size();
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialization. Floats use 12 significant digits, rationals "p/q".

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns{"trial",
                                                "seed",
                                                "h",
                                                "n",
                                                "model",
                                                "alpha",
                                                "alpha_method",
                                                "alpha_over_h",
                                                "witness",
                                                "q",
                                                "q_method",
                                                "theorem3_bound",
                                                "lemma1_bound",
                                                "violations"};
  return columns;
}

inline std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i)
    out << (i ? "," : "") << cols[i];
  out << '\n';
  auto opt = [](const std::optional<Rational>& r) {
    return r ? r->str() : std::string();
  };
  auto members = [](const std::optional<VertexSet>& s) {
    std::string text;
    if (!s) return text;
    for (Vertex v : *s) text += (text.empty() ? "" : " ") + std::to_string(v);
    return text;
  };
  for (const ReportRow& r : report.rows) {
    out << r.trial << ',' << r.seed << ',' << r.h << ',' << r.n << ','
        << to_string(r.model) << ',' << opt(r.alpha) << ',' << r.alpha_method
        << ',' << (r.alpha ? format_double(r.alpha->to_double() / r.h) : "")
        << ',' << members(r.witness) << ',' << opt(r.q) << ',' << r.q_method
        << ',' << opt(r.theorem3_bound) << ',' << opt(r.lemma1_bound) << ','
        << r.violations << '\n';
  }
  return out.str();
}

/// Inverse of report_csv for the row fields (derived columns are ignored).
inline std::vector<ReportRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return {};
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != report_columns().size())
      throw std::invalid_argument("malformed report row: " + line);
    auto opt = [](const std::string& s) -> std::optional<Rational> {
      if (s.empty()) return std::nullopt;
      return Rational::parse(s);
    };
    ReportRow r;
    r.trial = std::stoull(f[0]);
    r.seed = std::stoull(f[1]);
    r.h = static_cast<std::uint32_t>(std::stoul(f[2]));
    r.n = static_cast<std::uint32_t>(std::stoul(f[3]));
    r.model = parse_model(f[4]);
    r.alpha = opt(f[5]);
    r.alpha_method = f[6];
    if (!f[8].empty()) {
      VertexSet w;
      std::istringstream ws(f[8]);
      for (Vertex v = 0; ws >> v;) w.push_back(v);
      r.witness = std::move(w);
    }
    r.q = opt(f[9]);
    r.q_method = f[10];
    r.theorem3_bound = opt(f[11]);
    r.lemma1_bound = opt(f[12]);
    r.violations = f[13];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline nlohmann::ordered_json report_json(const ExperimentReport& report) {
  using nlohmann::ordered_json;
  auto num = [](double x) { return ordered_json(std::stod(format_double(x))); };
  auto opt = [](const std::optional<Rational>& r) {
    return r ? ordered_json(r->str()) : ordered_json(nullptr);
  };
  const ExperimentConfig& c = report.config;
  ordered_json j;
  ordered_json cfg;
  cfg["model"] = std::string(to_string(c.model));
  cfg["h"] = c.h_list;
  cfg["n"] = c.n_list;
  cfg["trials"] = c.trials;
  cfg["seed"] = c.root_seed.value;
  ordered_json tasks = ordered_json::array();
  if (c.tasks.expansion) tasks.push_back("expansion");
  if (c.tasks.modularity) tasks.push_back("modularity");
  if (c.tasks.bounds) tasks.push_back("bounds");
  if (c.tasks.lemma2) tasks.push_back("lemma2");
  cfg["tasks"] = tasks;
  j["config"] = cfg;

  ordered_json rows = ordered_json::array();
  for (const ReportRow& r : report.rows) {
    ordered_json o;
    o["trial"] = r.trial;
    o["seed"] = r.seed;
    o["h"] = r.h;
    o["n"] = r.n;
    o["model"] = std::string(to_string(r.model));
    o["alpha"] = opt(r.alpha);
    o["alpha_method"] = r.alpha_method;
    o["alpha_over_h"] =
        r.alpha ? num(r.alpha->to_double() / r.h) : ordered_json(nullptr);
    o["witness"] = r.witness ? ordered_json(*r.witness) : ordered_json(nullptr);
    o["q"] = opt(r.q);
    o["q_method"] = r.q_method;
    o["theorem3_bound"] = opt(r.theorem3_bound);
    o["lemma1_bound"] = opt(r.lemma1_bound);
    o["violations"] = r.violations;
    rows.push_back(std::move(o));
  }
  j["rows"] = rows;

  const ReportSummary& s = report.summary;
  ordered_json sum;
  sum["rows"] = s.rows;
  sum["min_alpha_over_h"] =
      s.min_alpha_over_h ? num(*s.min_alpha_over_h) : ordered_json(nullptr);
  sum["mean_alpha_over_h"] =
      s.mean_alpha_over_h ? num(*s.mean_alpha_over_h) : ordered_json(nullptr);
  sum["max_q"] = opt(s.max_q);
  sum["frac_alpha_ge_0.03418h"] =
      s.alpha_rows ? num(static_cast<double>(s.alpha_at_least_constant) /
                         static_cast<double>(s.alpha_rows))
                   : ordered_json(nullptr);
  sum["frac_q_le_0.92383"] =
      s.q_rows ? num(static_cast<double>(s.q_at_most_constant) /
                     static_cast<double>(s.q_rows))
               : ordered_json(nullptr);
  sum["violations"] = s.violations;
  sum["lemma2_cases"] = s.lemma2_cases;
  sum["lemma2_violations"] = s.lemma2_violations;
  sum["lemma2_skipped"] = s.lemma2_skipped;
  sum["status"] = report.failed() ? "FAILED" : "OK";
  j["summary"] = sum;
  return j;
}

/// Applies JSON config fields over an existing config (flags first, file
/// second).
inline void apply_config_json(ExperimentConfig& cfg,
                              const nlohmann::ordered_json& j) {
  if (j.contains("model"))
    cfg.model = parse_model(j["model"].get<std::string>());
  if (j.contains("h")) cfg.h_list = j["h"].get<std::vector<std::uint32_t>>();
  if (j.contains("n")) cfg.n_list = j["n"].get<std::vector<std::uint32_t>>();
  if (j.contains("trials")) cfg.trials = j["trials"].get<std::uint64_t>();
  if (j.contains("seed")) cfg.root_seed = Seed{j["seed"].get<std::uint64_t>()};
  if (j.contains("tasks"))
    cfg.tasks = parse_tasks(j["tasks"].get<std::vector<std::string>>());
  if (j.contains("exhaustive_limit"))
    cfg.exhaustive_limit = j["exhaustive_limit"].get<std::size_t>();
  if (j.contains("sampled_trials"))
    cfg.sampled_trials = j["sampled_trials"].get<std::size_t>();
}

}  // namespace paexp
