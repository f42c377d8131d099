// Copyright 2026 The ACT Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "act/rng.hpp"
#include "act/selector.hpp"
#include "act/simulator.hpp"

using namespace act;

namespace {

Item make_item(const std::string& id, double base, std::vector<double> terms,
               std::vector<double> labels) {
  return Item{id, base, std::move(terms), std::move(labels)};
}

// Four pairs on one metric, Ŝ(0) = 0.5 and Ŝ(w >= 0.5) = 1.0:
//   p0, p1: A(1.0, t=0, s=0) vs B(0.5, t=2, s=1) — flips to B at w = 0.25
//   p2:     A(2.0, t=0, s=1) vs B(0.0, t=1, s=0) — A wins for all w <= 1
//   p3:     A(0.0, t=0, s=0) vs B(1.0, t=0, s=1) — B always wins
PairDataset crafted_1d() {
  PairDataset ds;
  ds.n_metrics = 1;
  ds.metric_names = {"m1"};
  ds.treatment_id = "t";
  for (int i = 0; i < 2; ++i) {
    ds.pairs.push_back({make_item("a" + std::to_string(i), 1.0, {0.0}, {0.0}),
                        make_item("b" + std::to_string(i), 0.5, {2.0}, {1.0}),
                        "p" + std::to_string(i)});
  }
  ds.pairs.push_back({make_item("a2", 2.0, {0.0}, {1.0}),
                      make_item("b2", 0.0, {1.0}, {0.0}), "p2"});
  ds.pairs.push_back({make_item("a3", 0.0, {0.0}, {0.0}),
                      make_item("b3", 1.0, {0.0}, {1.0}), "p3"});
  return ds;
}

GuardrailConfig config_1d(double threshold) {
  GuardrailConfig config;
  config.thresholds = {threshold};
  config.partition = {{0}};
  config.grids[0] = {0.0, 1.0, 0.5};
  return config;
}

// Two independent copies of the crafted instance, one per metric. Labels on
// the foreign metric are a constant 0.5, so each metric's estimate depends
// only on its own weight:
//   Ŝ_i(w_i) = 0.5 for w_i < 0.25, then 0.75 from w_i >= 0.5 on the grid.
PairDataset crafted_2d_orthogonal() {
  PairDataset ds;
  ds.n_metrics = 2;
  ds.metric_names = {"m1", "m2"};
  ds.treatment_id = "t";
  const PairDataset base = crafted_1d();
  for (std::size_t metric = 0; metric < 2; ++metric) {
    for (std::size_t i = 0; i < base.pairs.size(); ++i) {
      RandomPair pair = base.pairs[i];
      pair.pair_id = "m" + std::to_string(metric) + "_" + pair.pair_id;
      for (Item* item : {&pair.item_a, &pair.item_b}) {
        item->item_id += "_m" + std::to_string(metric);
        if (metric == 0) {
          item->terms = {item->terms[0], 0.0};
          item->labels = {item->labels[0], 0.5};
        } else {
          item->terms = {0.0, item->terms[0]};
          item->labels = {0.5, item->labels[0]};
        }
      }
      ds.pairs.push_back(std::move(pair));
    }
  }
  return ds;
}

GuardrailConfig config_2d(double t0, double t1,
                          std::vector<std::vector<std::size_t>> partition) {
  GuardrailConfig config;
  config.thresholds = {t0, t1};
  config.partition = std::move(partition);
  config.grids[0] = {0.0, 1.0, 0.5};
  config.grids[1] = {0.0, 1.0, 0.5};
  return config;
}

SimCorpusConfig sim_config(std::uint64_t seed, double quality_0,
                           double quality_1) {
  SimCorpusConfig config;
  config.item_count = 500;
  config.seed = seed;
  MetricModel m0;
  m0.name = "m0";
  m0.label_term_coef = 1.5;
  m0.label_quality_coef = quality_0;
  MetricModel m1 = m0;
  m1.name = "m1";
  m1.label_quality_coef = quality_1;
  config.metrics = {m0, m1};
  return config;
}

}  // namespace

TEST_CASE("grid points of a single axis") {
  GuardrailConfig config = config_1d(0.0);
  const auto points = grid_points(config, {0});
  CHECK_EQ(points, std::vector<std::vector<double>>{{0.0}, {0.5}, {1.0}});
}

TEST_CASE("grid points of a 2x2 product, lexicographic order") {
  GuardrailConfig config;
  config.thresholds = {0.0, 0.0};
  config.partition = {{0, 1}};
  config.grids[0] = {0.0, 1.0, 1.0};
  config.grids[1] = {0.0, 1.0, 1.0};
  const auto points = grid_points(config, {0, 1});
  CHECK_EQ(points, std::vector<std::vector<double>>{
                       {0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}});
}

TEST_CASE("grid points tolerate a max that is not on the lattice") {
  GuardrailConfig config = config_1d(0.0);
  config.grids[0] = {0.0, 1.0, 0.3};
  const auto points = grid_points(config, {0});
  REQUIRE_EQ(points.size(), 4);
  CHECK_EQ(points[3][0], doctest::Approx(0.9));
}

TEST_CASE("missing grid spec is a config error") {
  const GuardrailConfig config = config_1d(0.5);
  CHECK_THROWS_AS(grid_points(config, {1}), Error);
}

TEST_CASE("pre-satisfied guardrail selects exactly zero") {
  const auto ds = crafted_1d();
  // Ŝ(0) = 0.5 >= 0.4
  const auto selection =
      select_group_weights(ds, WeightVector::zeros(1), {0}, config_1d(0.4));
  CHECK_EQ(selection.chosen, std::vector<double>{0.0});
}

TEST_CASE("crafted instance needs w = 0.5: Ŝ(0)=0.5, Ŝ(0.5)=Ŝ(1)=1") {
  const auto ds = crafted_1d();
  CHECK_EQ(estimate_metrics(ds, WeightVector({0.0})).values[0], 0.5);
  CHECK_EQ(estimate_metrics(ds, WeightVector({0.5})).values[0], 1.0);
  CHECK_EQ(estimate_metrics(ds, WeightVector({1.0})).values[0], 1.0);

  const auto selection =
      select_group_weights(ds, WeightVector::zeros(1), {0}, config_1d(0.75));
  CHECK_EQ(selection.chosen, std::vector<double>{0.5});
  CHECK_EQ(selection.valid, std::vector<bool>{false, true, true});
}

TEST_CASE("unreachable threshold raises Infeasible with margins") {
  const auto ds = crafted_1d();
  try {
    select_group_weights(ds, WeightVector::zeros(1), {0}, config_1d(1.5));
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK_EQ(e.group(), std::vector<std::size_t>{0});
    REQUIRE_EQ(e.margins().size(), 1);
    CHECK_EQ(e.margins()[0].best_estimate, 1.0);  // best Ŝ over the grid
    CHECK_EQ(e.margins()[0].threshold, 1.5);
  }
}

TEST_CASE("act_select returns zero when all guardrails already hold") {
  const auto ds = crafted_2d_orthogonal();
  const auto result = act_select(ds, config_2d(0.4, 0.4, {{0}, {1}}));
  CHECK(result.feasible);
  CHECK_EQ(result.weights, WeightVector::zeros(2));
}

TEST_CASE("orthogonal groups concatenate their standalone solutions") {
  const auto ds = crafted_2d_orthogonal();
  const auto config = config_2d(0.7, 0.7, {{0}, {1}});

  const auto standalone_0 =
      select_group_weights(ds, WeightVector::zeros(2), {0}, config);
  const auto standalone_1 =
      select_group_weights(ds, WeightVector::zeros(2), {1}, config);
  const auto joint = act_select(ds, config);

  CHECK(joint.feasible);
  CHECK_EQ(joint.weights[0], standalone_0.chosen[0]);
  CHECK_EQ(joint.weights[1], standalone_1.chosen[0]);
  CHECK_EQ(joint.weights, WeightVector({0.5, 0.5}));
}

TEST_CASE("reversed group order gives the identical result") {
  const auto ds = crafted_2d_orthogonal();
  const auto forward = act_select(ds, config_2d(0.7, 0.7, {{0}, {1}}));
  const auto reversed = act_select(ds, config_2d(0.7, 0.7, {{1}, {0}}));
  CHECK_EQ(forward.weights, reversed.weights);
}

TEST_CASE("infeasible group keeps weight 0 and the run is marked") {
  const auto ds = crafted_2d_orthogonal();
  const auto result = act_select(ds, config_2d(0.7, 0.99, {{0}, {1}}));
  CHECK_FALSE(result.feasible);
  CHECK_EQ(result.weights[0], 0.5);  // group {0} still solved
  CHECK_EQ(result.weights[1], 0.0);
  REQUIRE_EQ(result.per_group.size(), 2);
  CHECK(result.per_group[0].feasible);
  CHECK_FALSE(result.per_group[1].feasible);
}

TEST_CASE("feasible result satisfies every grouped guardrail on recheck") {
  const auto ds = crafted_2d_orthogonal();
  const auto config = config_2d(0.7, 0.6, {{0}, {1}});
  const auto result = act_select(ds, config);
  REQUIRE(result.feasible);
  const auto recheck = estimate_metrics(ds, result.weights);
  for (std::size_t metric = 0; metric < 2; ++metric) {
    CHECK_GE(recheck.values[metric], config.thresholds[metric]);
  }
  CHECK(result.violated_metrics.empty());
}

TEST_CASE("1-D brute force equals the grouped search") {
  const auto ds = crafted_1d();
  const auto grouped = act_select(ds, config_1d(0.75));
  const auto brute = joint_brute_force(ds, config_1d(0.75));
  CHECK_EQ(grouped.weights, brute.weights);
  CHECK_EQ(grouped.feasible, brute.feasible);
}

TEST_CASE("independent metrics: singleton groups match the joint oracle") {
  const auto ds = crafted_2d_orthogonal();
  const auto config = config_2d(0.7, 0.7, {{0}, {1}});
  const auto grouped = act_select(ds, config);
  const auto brute = joint_brute_force(ds, config);
  CHECK_EQ(grouped.weights, brute.weights);
}

TEST_CASE("coupled metrics sharing one group match the joint oracle") {
  for (const std::uint64_t seed : {1, 2, 3}) {
    // Strongly anti-correlated labels via opposite-sign quality coefficients.
    const Corpus corpus = generate_corpus(sim_config(seed, 2.0, -2.0));
    const PairDataset ds = log_random_pairs(corpus, 1500, seed + 10);
    GuardrailConfig config;
    config.thresholds = {0.52, 0.42};
    config.partition = {{0, 1}};
    config.grids[0] = {0.0, 1.5, 0.25};
    config.grids[1] = {0.0, 1.5, 0.25};

    bool grouped_feasible = true;
    WeightVector grouped_w;
    const auto grouped = act_select(ds, config);
    grouped_feasible = grouped.feasible;
    grouped_w = grouped.weights;

    try {
      const auto brute = joint_brute_force(ds, config);
      REQUIRE(grouped_feasible);
      CHECK_EQ(grouped_w, brute.weights);
    } catch (const InfeasibleError&) {
      CHECK_FALSE(grouped_feasible);
    }
  }
}

TEST_CASE("equal-norm valid points break ties lexicographically") {
  // One pair: A(0.5, terms (1,1), labels (1,1)) vs B(1.0, zeros, zeros).
  // A wins iff w0 + w1 > 0.5, so the valid set on {0,1}^2 at ε = 0.6 is
  // {(0,1), (1,0), (1,1)}; the two norm-1 points tie and (0,1) is smaller.
  PairDataset ds;
  ds.n_metrics = 2;
  ds.metric_names = {"m1", "m2"};
  ds.treatment_id = "t";
  ds.pairs.push_back({make_item("a", 0.5, {1.0, 1.0}, {1.0, 1.0}),
                      make_item("b", 1.0, {0.0, 0.0}, {0.0, 0.0}), "p0"});
  GuardrailConfig config;
  config.thresholds = {0.6, 0.6};
  config.partition = {{0, 1}};
  config.grids[0] = {0.0, 1.0, 1.0};
  config.grids[1] = {0.0, 1.0, 1.0};

  const auto grouped = act_select(ds, config);
  const auto brute = joint_brute_force(ds, config);
  CHECK_EQ(grouped.weights, WeightVector({0.0, 1.0}));
  CHECK_EQ(brute.weights, WeightVector({0.0, 1.0}));
}

TEST_CASE("brute force is refused over the grid point cap") {
  const auto ds = crafted_2d_orthogonal();
  auto config = config_2d(0.7, 0.7, {{0}, {1}});
  BruteForceOptions options;
  options.max_grid_points = 4;  // product is 9
  try {
    joint_brute_force(ds, config, options);
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK_EQ(e.code(), ErrorCode::kRefused);
  }
}

TEST_CASE("brute force with no valid point raises Infeasible") {
  const auto ds = crafted_1d();
  CHECK_THROWS_AS(joint_brute_force(ds, config_1d(1.5)), InfeasibleError);
}

TEST_CASE("raising a threshold never lowers the oracle's norm") {
  for (const std::uint64_t seed : {11, 12, 13, 14}) {
    const Corpus corpus = generate_corpus(sim_config(seed, 0.5, 0.0));
    const PairDataset ds = log_random_pairs(corpus, 1200, seed + 30);
    GuardrailConfig config;
    config.thresholds = {0.5, 0.5};
    config.partition = {{0, 1}};
    config.grids[0] = {0.0, 1.0, 0.25};
    config.grids[1] = {0.0, 1.0, 0.25};

    const auto norm_sq = [](const WeightVector& w) {
      double sum = 0.0;
      for (double v : w.weights) sum += v * v;
      return sum;
    };

    double previous = -1.0;
    for (const double threshold : {0.50, 0.52, 0.54, 0.56}) {
      config.thresholds[0] = threshold;
      try {
        const double norm = norm_sq(joint_brute_force(ds, config).weights);
        CHECK_GE(norm, previous);
        previous = norm;
      } catch (const InfeasibleError&) {
        break;  // once infeasible, stays infeasible as thresholds rise
      }
    }
  }
}

TEST_CASE("selection is deterministic") {
  const Corpus corpus = generate_corpus(sim_config(77, 0.3, 0.3));
  const PairDataset ds = log_random_pairs(corpus, 1000, 78);
  GuardrailConfig config;
  config.thresholds = {0.5, 0.5};
  config.partition = {{0}, {1}};
  config.grids[0] = {0.0, 1.0, 0.125};
  config.grids[1] = {0.0, 1.0, 0.125};
  const auto first = act_select(ds, config);
  const auto second = act_select(ds, config);
  CHECK_EQ(first.weights, second.weights);
  CHECK_EQ(first.feasible, second.feasible);
}

TEST_CASE("multi-pass is accepted, zero passes are not") {
  const auto ds = crafted_1d();
  SelectorOptions two_passes;
  two_passes.passes = 2;
  const auto result = act_select(ds, config_1d(0.75), two_passes);
  CHECK(result.feasible);
  CHECK_EQ(result.weights[0], 0.5);

  SelectorOptions zero_passes;
  zero_passes.passes = 0;
  CHECK_THROWS_AS(act_select(ds, config_1d(0.75), zero_passes), Error);
}

TEST_CASE("chosen sub-vectors are members of their declared grids") {
  const auto ds = crafted_2d_orthogonal();
  const auto result = act_select(ds, config_2d(0.7, 0.7, {{0}, {1}}));
  for (const GroupSelection& group : result.per_group) {
    REQUIRE(group.feasible);
    bool found = false;
    for (const auto& point : group.grid) found = found || point == group.chosen;
    CHECK(found);
  }
}
