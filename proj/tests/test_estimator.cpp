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

#include <algorithm>
#include <cmath>

#include "act/estimator.hpp"
#include "act/rng.hpp"
#include "act/simulator.hpp"

using namespace act;

namespace {

Item make_item(const std::string& id, double base, std::vector<double> terms,
               std::vector<double> labels) {
  return Item{id, base, std::move(terms), std::move(labels)};
}

PairDataset dataset_of(std::vector<RandomPair> pairs, std::size_t n) {
  PairDataset ds;
  ds.n_metrics = n;
  for (std::size_t i = 0; i < n; ++i) ds.metric_names.push_back("m");
  ds.treatment_id = "t";
  ds.pairs = std::move(pairs);
  return ds;
}

SimCorpusConfig predictive_config(std::uint64_t seed) {
  SimCorpusConfig config;
  config.item_count = 4000;
  config.base_spread = 1.0;
  config.seed = seed;
  MetricModel metric;
  metric.name = "m1";
  metric.label_term_coef = 2.0;
  config.metrics.push_back(metric);
  return config;
}

}  // namespace

TEST_CASE("strictly higher score wins for A") {
  const RandomPair pair{make_item("a", 2.0, {0.0}, {1.0}),
                        make_item("b", 1.0, {0.0}, {0.0}), "p"};
  CHECK(pair_winner(pair, WeightVector({0.0})) == Winner::kA);
}

TEST_CASE("ties go to B") {
  const RandomPair pair{make_item("a", 1.0, {0.0}, {1.0}),
                        make_item("b", 1.0, {0.0}, {0.0}), "p"};
  CHECK(pair_winner(pair, WeightVector({0.0})) == Winner::kB);
}

TEST_CASE("a weighted term can flip the winner") {
  // r_A = 2, r_B = 1 + 1*2 = 3 under w = (1)
  const RandomPair pair{make_item("a", 2.0, {0.0}, {1.0}),
                        make_item("b", 1.0, {2.0}, {0.0}), "p"};
  CHECK(pair_winner(pair, WeightVector({0.0})) == Winner::kA);
  CHECK(pair_winner(pair, WeightVector({1.0})) == Winner::kB);
}

TEST_CASE("winner dimension mismatch is a shape error") {
  const RandomPair pair{make_item("a", 2.0, {0.0}, {1.0}),
                        make_item("b", 1.0, {2.0}, {0.0}), "p"};
  CHECK_THROWS_AS(pair_winner(pair, WeightVector({1.0, 2.0})), Error);
}

TEST_CASE("single pair estimate is the winner's labels") {
  const auto ds = dataset_of({{make_item("a", 2.0, {0.0, 0.0}, {1.0, 0.0}),
                               make_item("b", 1.0, {0.0, 0.0}, {0.0, 1.0}),
                               "p0"}},
                             2);
  const auto estimate = estimate_metrics(ds, WeightVector::zeros(2));
  CHECK_EQ(estimate.values, std::vector<double>{1.0, 0.0});
  CHECK_EQ(estimate.pair_count, 1);
}

TEST_CASE("estimate is the mean over winners: (1 + 0) / 2") {
  const auto ds = dataset_of(
      {{make_item("a", 2.0, {0.0}, {1.0}), make_item("b", 1.0, {0.0}, {0.0}),
        "p0"},
       {make_item("c", 2.0, {0.0}, {0.0}), make_item("d", 1.0, {0.0}, {1.0}),
        "p1"}},
      1);
  CHECK_EQ(estimate_metrics(ds, WeightVector({0.0})).values[0], 0.5);
}

TEST_CASE("all ties means the mean of item B labels") {
  const auto ds = dataset_of(
      {{make_item("a", 1.0, {0.0}, {1.0}), make_item("b", 1.0, {0.0}, {0.0}),
        "p0"},
       {make_item("c", 1.0, {0.0}, {0.0}), make_item("d", 1.0, {0.0}, {1.0}),
        "p1"}},
      1);
  CHECK_EQ(estimate_metrics(ds, WeightVector({0.0})).values[0], 0.5);
}

TEST_CASE("empty dataset is an empty-input error") {
  const PairDataset empty = dataset_of({}, 1);
  CHECK_THROWS_AS(estimate_metrics(empty, WeightVector({0.0})), Error);
}

TEST_CASE("permuting pair order leaves the estimate bit-identical") {
  const Corpus corpus = generate_corpus(predictive_config(3));
  PairDataset ds = log_random_pairs(corpus, 5000, 17);
  const WeightVector w({0.7});
  const auto before = estimate_metrics(ds, w);

  Rng rng(5);
  for (std::size_t i = ds.pairs.size(); i > 1; --i) {
    std::swap(ds.pairs[i - 1], ds.pairs[uniform_index(rng, i)]);
  }
  const auto after = estimate_metrics(ds, w);
  CHECK_EQ(before.values[0], after.values[0]);
}

TEST_CASE("scaling scores by a positive constant changes nothing") {
  const Corpus corpus = generate_corpus(predictive_config(9));
  const PairDataset ds = log_random_pairs(corpus, 2000, 23);
  const WeightVector w({0.4});
  const auto baseline = estimate_metrics(ds, w);

  for (const double scale : {2.0, 0.5, 4.0}) {
    PairDataset scaled = ds;
    for (RandomPair& pair : scaled.pairs) {
      for (Item* item : {&pair.item_a, &pair.item_b}) {
        item->base_score *= scale;
        for (double& t : item->terms) t *= scale;
      }
    }
    CHECK_EQ(estimate_metrics(scaled, w).values[0], baseline.values[0]);
  }
}

TEST_CASE("estimate converges: 10k vs 100k pair gap under 0.01") {
  const Corpus corpus = generate_corpus(predictive_config(21));
  const PairDataset full = log_random_pairs(corpus, 100000, 31);
  PairDataset prefix = full;
  prefix.pairs.resize(10000);

  for (const double weight : {0.0, 0.5, 1.5}) {
    const WeightVector w({weight});
    const double small = estimate_metrics(prefix, w).values[0];
    const double large = estimate_metrics(full, w).values[0];
    CHECK_LT(std::fabs(small - large), 0.01);
  }
}

TEST_CASE("monotone response where the label is monotone in the term") {
  SimCorpusConfig config = predictive_config(33);
  config.metrics[0].label_model = LabelModel::kThreshold;
  const Corpus corpus = generate_corpus(config);
  const PairDataset ds = log_random_pairs(corpus, 20000, 37);

  double previous = -1.0;
  for (const double weight : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double value = estimate_metrics(ds, WeightVector({weight})).values[0];
    CHECK_GE(value, previous);
    previous = value;
  }
}

TEST_CASE("zero-variance winners give a degenerate interval") {
  const auto ds = dataset_of(
      {{make_item("a", 2.0, {0.0}, {1.0}), make_item("b", 1.0, {0.0}, {0.0}),
        "p0"},
       {make_item("c", 2.0, {0.0}, {1.0}), make_item("d", 1.0, {0.0}, {0.0}),
        "p1"}},
      1);
  const auto estimate = estimate_with_ci(ds, WeightVector({0.0}), 0.95, 200, 1);
  REQUIRE(estimate.ci.has_value());
  CHECK_EQ((*estimate.ci)[0].low, 1.0);
  CHECK_EQ((*estimate.ci)[0].high, 1.0);
}

TEST_CASE("same seed gives identical intervals") {
  const Corpus corpus = generate_corpus(predictive_config(5));
  const PairDataset ds = log_random_pairs(corpus, 500, 7);
  const auto first = estimate_with_ci(ds, WeightVector({0.3}), 0.95, 300, 99);
  const auto second = estimate_with_ci(ds, WeightVector({0.3}), 0.95, 300, 99);
  CHECK_EQ((*first.ci)[0].low, (*second.ci)[0].low);
  CHECK_EQ((*first.ci)[0].high, (*second.ci)[0].high);
}

TEST_CASE("interval contains the point estimate") {
  const Corpus corpus = generate_corpus(predictive_config(6));
  const PairDataset ds = log_random_pairs(corpus, 800, 8);
  for (const double weight : {0.0, 0.5, 2.0}) {
    const auto estimate =
        estimate_with_ci(ds, WeightVector({weight}), 0.9, 250, 101);
    CHECK_LE((*estimate.ci)[0].low, estimate.values[0]);
    CHECK_GE((*estimate.ci)[0].high, estimate.values[0]);
  }
}

TEST_CASE("bootstrap width matches the normal approximation on a fair coin") {
  // 1000 pairs whose winner labels are a deterministic half/half split:
  // width should be near 2 * 1.96 * sqrt(0.25 / 1000).
  std::vector<RandomPair> pairs;
  for (int i = 0; i < 1000; ++i) {
    const double label = i % 2 == 0 ? 1.0 : 0.0;
    pairs.push_back({make_item("a" + std::to_string(i), 2.0, {0.0}, {label}),
                     make_item("b" + std::to_string(i), 1.0, {0.0}, {0.5}),
                     "p" + std::to_string(i)});
  }
  const auto ds = dataset_of(std::move(pairs), 1);
  const auto estimate = estimate_with_ci(ds, WeightVector({0.0}), 0.95, 500, 3);
  const double width = (*estimate.ci)[0].high - (*estimate.ci)[0].low;
  const double expected = 2.0 * 1.96 * std::sqrt(0.25 / 1000.0);
  CHECK_GT(width, expected * 0.7);
  CHECK_LT(width, expected * 1.3);
}

TEST_CASE("ci parameter validation") {
  const auto ds = dataset_of({{make_item("a", 2.0, {0.0}, {1.0}),
                               make_item("b", 1.0, {0.0}, {0.0}), "p0"}},
                             1);
  CHECK_THROWS_AS(estimate_with_ci(ds, WeightVector({0.0}), 1.5, 200, 1),
                  Error);
  CHECK_THROWS_AS(estimate_with_ci(ds, WeightVector({0.0}), 0.95, 50, 1),
                  Error);
}
