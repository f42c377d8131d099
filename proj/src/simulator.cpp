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

#include "act/simulator.hpp"

#include <cmath>
#include <cstdio>

#include "act/ranking.hpp"
#include "act/rng.hpp"
#include "stat_util.hpp"

namespace act {

namespace {

constexpr double kVariantNoiseFraction = 0.1;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::string indexed_id(const char* prefix, std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%s%06zu", prefix, index);
  return buffer;
}

void check_corpus(const Corpus& corpus) {
  if (corpus.items.size() < 2) {
    throw Error(ErrorCode::kEmptyInput,
                "need at least 2 items, got " +
                    std::to_string(corpus.items.size()));
  }
}

// Two distinct item indices, uniform over ordered pairs; the draw order is
// the A/B assignment.
std::pair<std::size_t, std::size_t> draw_pair(Rng& rng, std::size_t n) {
  const std::size_t a = uniform_index(rng, n);
  std::size_t b = uniform_index(rng, n - 1);
  if (b >= a) ++b;
  return {a, b};
}

std::size_t winner_index(const Corpus& corpus, std::size_t a, std::size_t b,
                         const WeightVector& w) {
  const double score_a = score_item(corpus.items[a], w);
  const double score_b = score_item(corpus.items[b], w);
  return score_a > score_b ? a : b;  // ties to B, same rule as the estimator
}

}  // namespace

Corpus generate_corpus(const SimCorpusConfig& config) {
  if (config.item_count < 2) {
    throw Error(ErrorCode::kParameter, "item_count must be >= 2");
  }
  if (config.metrics.empty()) {
    throw Error(ErrorCode::kParameter, "need at least one metric model");
  }

  Corpus corpus;
  corpus.metric_names.reserve(config.metrics.size());
  for (std::size_t i = 0; i < config.metrics.size(); ++i) {
    const std::string& name = config.metrics[i].name;
    corpus.metric_names.push_back(name.empty() ? indexed_id("m", i) : name);
  }

  Rng rng(config.seed);
  corpus.items.reserve(config.item_count);
  for (std::size_t index = 0; index < config.item_count; ++index) {
    Item item;
    item.item_id = indexed_id("item", index);
    const double quality = standard_normal(rng);
    item.base_score = config.base_mean +
                      config.base_spread * standard_normal(rng) +
                      config.base_quality_coef * quality;
    item.terms.reserve(config.metrics.size());
    item.labels.reserve(config.metrics.size());
    for (const MetricModel& metric : config.metrics) {
      const double term =
          metric.term_mean + metric.term_spread * standard_normal(rng);
      item.terms.push_back(term);
      double label = 0.0;
      switch (metric.label_model) {
        case LabelModel::kLogistic: {
          const double p = sigmoid(metric.label_bias +
                                   metric.label_term_coef *
                                       (term - metric.term_mean) +
                                   metric.label_quality_coef * quality);
          label = bernoulli(rng, p) ? 1.0 : 0.0;
          break;
        }
        case LabelModel::kThreshold:
          label = term > metric.term_mean ? 1.0 : 0.0;
          break;
      }
      item.labels.push_back(label);
    }
    corpus.items.push_back(std::move(item));
  }

  bool degenerate = config.base_spread == 0.0 && config.base_quality_coef == 0.0;
  for (const MetricModel& metric : config.metrics) {
    degenerate = degenerate && metric.term_spread == 0.0;
  }
  if (degenerate) {
    corpus.warnings.push_back(
        "all spreads are zero; every item is identical and rankings are "
        "decided by tie-breaking alone");
  }
  return corpus;
}

PairDataset log_random_pairs(const Corpus& corpus, std::size_t m,
                             std::uint64_t seed,
                             const std::string& treatment_id) {
  check_corpus(corpus);
  if (m < 1) {
    throw Error(ErrorCode::kParameter, "need at least one pair");
  }

  PairDataset dataset;
  dataset.n_metrics = corpus.metric_names.size();
  dataset.metric_names = corpus.metric_names;
  dataset.treatment_id = treatment_id;
  dataset.pairs.reserve(m);

  Rng rng(seed);
  for (std::size_t j = 0; j < m; ++j) {
    const auto [a, b] = draw_pair(rng, corpus.items.size());
    dataset.pairs.push_back(
        {corpus.items[a], corpus.items[b], indexed_id("p", j)});
  }
  return dataset;
}

OnlineSample simulate_online_sample(const Corpus& corpus,
                                    const WeightVector& w,
                                    std::size_t impressions,
                                    std::uint64_t seed) {
  check_corpus(corpus);
  if (impressions == 0) {
    throw Error(ErrorCode::kEmptyInput, "impressions must be >= 1");
  }

  OnlineSample sample;
  sample.seed = seed;
  sample.winner_indices.reserve(impressions);
  Rng rng(seed);
  for (std::size_t i = 0; i < impressions; ++i) {
    const auto [a, b] = draw_pair(rng, corpus.items.size());
    sample.winner_indices.push_back(
        static_cast<std::uint32_t>(winner_index(corpus, a, b, w)));
  }
  return sample;
}

OnlineOutcome simulate_online_metric(const Corpus& corpus,
                                     const WeightVector& w,
                                     std::size_t impressions,
                                     std::uint64_t seed) {
  const OnlineSample sample =
      simulate_online_sample(corpus, w, impressions, seed);

  OnlineOutcome outcome;
  outcome.impressions = impressions;
  outcome.seed = seed;
  const std::size_t n = corpus.metric_names.size();
  outcome.values.reserve(n);
  std::vector<double> column(impressions);
  for (std::size_t metric = 0; metric < n; ++metric) {
    for (std::size_t i = 0; i < impressions; ++i) {
      column[i] = corpus.items[sample.winner_indices[i]].labels[metric];
    }
    outcome.values.push_back(internal::stable_mean(column));
  }
  return outcome;
}

Corpus make_decrease_variant(const Corpus& corpus, std::size_t metric_index,
                             double magnitude, std::uint64_t seed) {
  if (!(magnitude > 0.0)) {
    throw Error(ErrorCode::kParameter, "magnitude must be > 0");
  }
  if (metric_index >= corpus.metric_names.size()) {
    throw Error(ErrorCode::kParameter,
                "metric index " + std::to_string(metric_index) +
                    " out of range");
  }

  Corpus variant = corpus;
  Rng rng(seed);
  for (Item& item : variant.items) {
    item.base_score -= magnitude * item.labels[metric_index];
    item.base_score +=
        kVariantNoiseFraction * magnitude * standard_normal(rng);
  }
  return variant;
}

}  // namespace act
