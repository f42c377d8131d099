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

#include "act/domain.hpp"

using namespace act;

namespace {

Item make_item(const std::string& id, double base, std::vector<double> terms,
               std::vector<double> labels) {
  return Item{id, base, std::move(terms), std::move(labels)};
}

PairDataset two_pair_dataset() {
  PairDataset ds;
  ds.n_metrics = 2;
  ds.metric_names = {"m1", "m2"};
  ds.treatment_id = "t";
  ds.pairs.push_back({make_item("a", 1.0, {0.1, 0.2}, {1.0, 0.0}),
                      make_item("b", 0.5, {0.3, 0.4}, {0.0, 1.0}), "p0"});
  ds.pairs.push_back({make_item("c", 0.2, {0.5, 0.6}, {0.5, 0.5}),
                      make_item("d", 0.9, {0.7, 0.8}, {1.0, 1.0}), "p1"});
  return ds;
}

}  // namespace

TEST_CASE("well-formed dataset validates ok") {
  const auto report = validate_dataset(two_pair_dataset());
  CHECK(report.ok);
  CHECK(report.violations.empty());
}

TEST_CASE("pair repeating one item is flagged by pair_id") {
  auto ds = two_pair_dataset();
  ds.pairs[1].item_b.item_id = ds.pairs[1].item_a.item_id;
  const auto report = validate_dataset(ds);
  REQUIRE_FALSE(report.ok);
  REQUIRE_EQ(report.violations.size(), 1);
  CHECK_EQ(report.violations[0].pair_id, "p1");
}

TEST_CASE("label out of [0,1] is flagged") {
  auto ds = two_pair_dataset();
  ds.pairs[0].item_a.labels[1] = 1.5;
  const auto report = validate_dataset(ds);
  REQUIRE_FALSE(report.ok);
  CHECK_EQ(report.violations[0].pair_id, "p0");
  CHECK_EQ(report.violations[0].message, "label out of [0,1]");
}

TEST_CASE("shape and finiteness violations are reported") {
  auto ds = two_pair_dataset();
  ds.pairs[0].item_a.terms.push_back(0.0);
  ds.pairs[1].item_b.base_score = std::numeric_limits<double>::quiet_NaN();
  const auto report = validate_dataset(ds);
  CHECK_EQ(report.violations.size(), 2);
}

TEST_CASE("empty dataset is a violation") {
  PairDataset ds;
  ds.n_metrics = 1;
  ds.metric_names = {"m1"};
  CHECK_FALSE(validate_dataset(ds).ok);
}

TEST_CASE("validate_dataset is idempotent and side-effect free") {
  const auto ds = two_pair_dataset();
  const auto copy = ds;
  const auto first = validate_dataset(ds);
  const auto second = validate_dataset(ds);
  CHECK_EQ(first.ok, second.ok);
  CHECK_EQ(first.violations.size(), second.violations.size());
  CHECK(ds == copy);
}

TEST_CASE("grid values form the arithmetic sequence") {
  CHECK_EQ(grid_values({0.0, 1.0, 0.5}), std::vector<double>{0.0, 0.5, 1.0});

  // max not exactly hit is permitted
  const auto coarse = grid_values({0.0, 1.0, 0.3});
  REQUIRE_EQ(coarse.size(), 4);
  CHECK_EQ(coarse[0], 0.0);
  CHECK_EQ(coarse[1], 0.3);
  CHECK_EQ(coarse[2], doctest::Approx(0.6));
  CHECK_EQ(coarse[3], doctest::Approx(0.9));
}

TEST_CASE("grid endpoint survives last-step rounding") {
  const auto values = grid_values({0.0, 0.6, 0.2});
  REQUIRE_EQ(values.size(), 4);
  CHECK_EQ(values.back(), doctest::Approx(0.6));
}

TEST_CASE("negative grid snaps its zero point to exactly 0") {
  const auto values = grid_values({-0.3, 0.3, 0.1});
  REQUIRE_EQ(values.size(), 7);
  CHECK_EQ(values[3], 0.0);
}

TEST_CASE("config validation accepts a consistent config") {
  GuardrailConfig config;
  config.thresholds = {0.5, 0.5};
  config.partition = {{0}, {1}};
  config.grids[0] = {0.0, 1.0, 0.5};
  config.grids[1] = {-1.0, 1.0, 0.25};
  CHECK_NOTHROW(validate_config(config, 2));
}

TEST_CASE("config validation rejects bad configs") {
  GuardrailConfig good;
  good.thresholds = {0.5, 0.5};
  good.partition = {{0}, {1}};
  good.grids[0] = {0.0, 1.0, 0.5};
  good.grids[1] = {0.0, 1.0, 0.5};

  auto overlapping = good;
  overlapping.partition = {{0, 1}, {1}};
  CHECK_THROWS_AS(validate_config(overlapping, 2), Error);

  auto missing_grid = good;
  missing_grid.grids.erase(1);
  CHECK_THROWS_AS(validate_config(missing_grid, 2), Error);

  auto no_zero = good;
  no_zero.grids[0] = {0.5, 1.0, 0.25};
  CHECK_THROWS_AS(validate_config(no_zero, 2), Error);

  auto bad_step = good;
  bad_step.grids[0] = {0.0, 1.0, 0.0};
  CHECK_THROWS_AS(validate_config(bad_step, 2), Error);

  auto out_of_range = good;
  out_of_range.partition = {{0}, {5}};
  CHECK_THROWS_AS(validate_config(out_of_range, 2), Error);

  auto wrong_thresholds = good;
  wrong_thresholds.thresholds = {0.5};
  CHECK_THROWS_AS(validate_config(wrong_thresholds, 2), Error);
}
