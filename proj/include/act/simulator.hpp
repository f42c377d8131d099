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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "act/domain.hpp"

namespace act {

enum class LabelModel {
  // P(label = 1) = sigmoid(bias + term_coef*(term - term_mean) +
  //                        quality_coef*quality), sampled once per item.
  kLogistic,
  // label = 1 iff term > term_mean. Deterministic; useful where an exact
  // oracle needs labels that are a monotone function of the term.
  kThreshold,
};

struct MetricModel {
  std::string name;
  double term_mean = 0.0;
  double term_spread = 1.0;
  double label_bias = 0.0;
  double label_term_coef = 0.0;
  double label_quality_coef = 0.0;
  LabelModel label_model = LabelModel::kLogistic;
};

// Generative model of the synthetic platform. Each item draws a latent
// quality factor, a base score, and per-metric terms; labels are linked to
// terms and quality through the per-metric label model.
struct SimCorpusConfig {
  std::size_t item_count = 0;
  std::vector<MetricModel> metrics;
  double base_mean = 0.0;
  double base_spread = 1.0;
  double base_quality_coef = 0.0;
  std::uint64_t seed = 0;
};

struct Corpus {
  std::vector<Item> items;
  std::vector<std::string> metric_names;
  std::vector<std::string> warnings;  // e.g. degenerate all-identical config
};

// Simulated "online" metric levels for one weight vector: what a live
// experiment would have measured.
struct OnlineOutcome {
  std::vector<double> values;
  std::size_t impressions = 0;
  std::uint64_t seed = 0;
};

// Winner item index per impression; enough to recompute any label statistic
// (the report CIs bootstrap over these).
struct OnlineSample {
  std::vector<std::uint32_t> winner_indices;
  std::uint64_t seed = 0;
};

// Deterministic for a fixed config (the seed lives inside it).
Corpus generate_corpus(const SimCorpusConfig& config);

// m pairs of two distinct items sampled uniformly; the draw order randomizes
// the A/B assignment.
PairDataset log_random_pairs(const Corpus& corpus, std::size_t m,
                             std::uint64_t seed,
                             const std::string& treatment_id = "sim");

// Repeats `impressions` two-arm trials: sample a fresh pair, show the item
// the formula scores higher (ties to B), record its labels. Returns the
// per-metric mean outcome; the pairwise estimator on logged pairs is
// unbiased for exactly this process.
OnlineOutcome simulate_online_metric(const Corpus& corpus,
                                     const WeightVector& w,
                                     std::size_t impressions,
                                     std::uint64_t seed);

OnlineSample simulate_online_sample(const Corpus& corpus,
                                    const WeightVector& w,
                                    std::size_t impressions,
                                    std::uint64_t seed);

// A model change known to depress metric `metric_index`: base scores are
// shifted against items with high labels for that metric, plus a little
// seeded score noise so the variant behaves like a retrained model rather
// than a clean counterfactual. The input corpus is untouched.
Corpus make_decrease_variant(const Corpus& corpus, std::size_t metric_index,
                             double magnitude, std::uint64_t seed);

}  // namespace act
