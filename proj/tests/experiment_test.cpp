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

#include "paexp/experiment.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "paexp/graph_io.hpp"

using namespace paexp;

namespace {

ExperimentConfig golden_config() {
  ExperimentConfig cfg;
  cfg.model = ModelTag::TildePA;
  cfg.h_list = {2, 3};
  cfg.n_list = {6, 9};
  cfg.trials = 3;
  cfg.root_seed = Seed{20240601};
  cfg.tasks = parse_tasks({"expansion", "modularity", "bounds"});
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Experiment, SingleTrialRow) {
  ExperimentConfig cfg;
  cfg.h_list = {2};
  cfg.n_list = {8};
  cfg.trials = 1;
  cfg.tasks = parse_tasks({"expansion"});
  auto report = run_experiment(cfg);
  ASSERT_EQ(report.rows.size(), 1u);
  const ReportRow& row = report.rows[0];
  EXPECT_EQ(row.alpha_method, "exact");
  ASSERT_TRUE(row.alpha);
  ASSERT_TRUE(row.witness);
  const auto g = generate(cfg.model, 2, 8, Seed{row.seed}).graph;
  EXPECT_EQ(row.seed, derive_seed(cfg.root_seed, 0).value);
  EXPECT_EQ(edge_boundary(g.graph, *row.witness).ratio, *row.alpha);
  EXPECT_EQ(*exact_expansion(g.graph, Rational(1, 2)).alpha, *row.alpha);
  EXPECT_FALSE(row.q);
  EXPECT_FALSE(report.failed());
}

TEST(Experiment, CorpusHasNoViolations) {
  for (auto model : {ModelTag::StandardPA, ModelTag::TildePA}) {
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.h_list = {2};
    cfg.n_list = {4, 6, 8, 10};
    cfg.trials = 4;
    cfg.tasks = parse_tasks({"modularity", "bounds"});
    auto report = run_experiment(cfg);
    EXPECT_EQ(report.rows.size(), 16u);
    EXPECT_EQ(report.summary.violations, 0u);
    for (const ReportRow& row : report.rows) {
      ASSERT_TRUE(row.q && row.theorem3_bound && row.lemma1_bound);
      EXPECT_LE(*row.q, *row.theorem3_bound);
      EXPECT_LE(*row.q, *row.lemma1_bound);
      EXPECT_EQ(row.q_method, "exact");
    }
  }
}

TEST(Experiment, RowOrderAndDeterminism) {
  ExperimentConfig cfg = golden_config();
  cfg.threads = 1;
  auto a = run_experiment(cfg);
  cfg.threads = 3;
  auto b = run_experiment(cfg);
  EXPECT_EQ(report_csv(a), report_csv(b));
  EXPECT_EQ(report_json(a).dump(), report_json(b).dump());
  ASSERT_EQ(a.rows.size(), 12u);
  EXPECT_EQ(a.rows[0].h, 2u);
  EXPECT_EQ(a.rows[0].n, 6u);
  EXPECT_EQ(a.rows[3].n, 9u);
  EXPECT_EQ(a.rows[6].h, 3u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].trial, i);
}

TEST(Experiment, SampledBeyondExhaustiveLimit) {
  ExperimentConfig cfg;
  cfg.h_list = {2};
  cfg.n_list = {14};
  cfg.exhaustive_limit = 10;
  cfg.tasks = parse_tasks({"expansion", "modularity", "bounds"});
  auto report = run_experiment(cfg);
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].alpha_method, "sampled");
  EXPECT_EQ(report.rows[0].q_method, "greedy");
  EXPECT_FALSE(report.rows[0].theorem3_bound);
  EXPECT_EQ(report.summary.violations, 0u);
}

TEST(Experiment, CutProbabilityTask) {
  ExperimentConfig cfg;
  cfg.h_list = {1, 2};
  cfg.n_list = {3, 5};
  cfg.tasks = parse_tasks({"lemma2"});
  auto report = run_experiment(cfg);
  EXPECT_TRUE(report.rows.empty());
  EXPECT_EQ(report.summary.lemma2_skipped, 1u);
  EXPECT_GT(report.summary.lemma2_cases, 0u);
  EXPECT_EQ(report.summary.lemma2_violations, 0u);
}

TEST(Experiment, ConfigValidation) {
  ExperimentConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.tasks = TaskSet{};
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  EXPECT_THROW(parse_tasks({"expansion", "spectral"}), std::invalid_argument);
}

TEST(Experiment, ConfigJsonOverrides) {
  ExperimentConfig cfg;
  apply_config_json(cfg, json::parse(R"({"model":"tilde","h":[3],"n":[5,7],
      "trials":2,"seed":9,"tasks":["modularity"]})"));
  EXPECT_EQ(cfg.model, ModelTag::TildePA);
  EXPECT_EQ(cfg.h_list, (std::vector<std::uint32_t>{3}));
  EXPECT_EQ(cfg.n_list, (std::vector<std::uint32_t>{5, 7}));
  EXPECT_EQ(cfg.trials, 2u);
  EXPECT_EQ(cfg.root_seed, Seed{9});
  EXPECT_TRUE(cfg.tasks.modularity);
  EXPECT_FALSE(cfg.tasks.expansion);
}

TEST(Report, EmptyIsHeaderOnly) {
  ExperimentReport empty;
  const std::string csv = report_csv(empty);
  EXPECT_EQ(csv,
            "trial,seed,h,n,model,alpha,alpha_method,alpha_over_h,witness,q,"
            "q_method,theorem3_bound,lemma1_bound,violations\n");
  EXPECT_TRUE(parse_report_csv(csv).empty());
}

TEST(Report, CsvRoundTrip) {
  auto report = run_experiment(golden_config());
  auto rows = parse_report_csv(report_csv(report));
  ASSERT_EQ(rows.size(), report.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    EXPECT_EQ(rows[i], report.rows[i]);
  ExperimentReport copy;
  copy.rows = rows;
  EXPECT_EQ(report_csv(copy), report_csv(report));
  EXPECT_THROW(parse_report_csv("header\n1,2,3\n"), std::invalid_argument);
}

TEST(Report, JsonSummaryFields) {
  ExperimentConfig cfg = golden_config();
  auto j = report_json(run_experiment(cfg));
  EXPECT_EQ(j["rows"].size(), 12u);
  const auto& s = j["summary"];
  EXPECT_EQ(s["status"], "OK");
  EXPECT_EQ(s["violations"], 0);
  EXPECT_TRUE(s["frac_alpha_ge_0.03418h"].is_number());
  EXPECT_TRUE(s["frac_q_le_0.92383"].is_number());
  EXPECT_TRUE(s["min_alpha_over_h"].is_number());
  EXPECT_EQ(j["config"]["tasks"],
            json::parse(R"(["expansion","modularity","bounds"])"));
}

TEST(Report, GoldenCsv) {
  const std::string path = std::string(PAEXP_GOLDEN_DIR) + "/sweep_tilde.csv";
  const std::string csv = report_csv(run_experiment(golden_config()));
  if (std::getenv("PAEXP_UPDATE_GOLDEN")) write_text_file(path, csv);
  EXPECT_EQ(slurp(path), csv);
}
