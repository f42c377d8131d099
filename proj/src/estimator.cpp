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

#include "act/estimator.hpp"

#include <algorithm>

#include "act/ranking.hpp"
#include "act/rng.hpp"
#include "stat_util.hpp"

namespace act {

namespace {

// Winner labels, one row per pair, laid out [pair][metric].
std::vector<std::vector<double>> winner_labels(const PairDataset& dataset,
                                               const WeightVector& w) {
  std::vector<std::vector<double>> rows;
  rows.reserve(dataset.pairs.size());
  for (const RandomPair& pair : dataset.pairs) {
    const Winner winner = pair_winner(pair, w);
    rows.push_back(winner == Winner::kA ? pair.item_a.labels
                                        : pair.item_b.labels);
  }
  return rows;
}

void check_inputs(const PairDataset& dataset, const WeightVector& w) {
  if (dataset.pairs.empty()) {
    throw Error(ErrorCode::kEmptyInput, "estimator: dataset has no pairs");
  }
  if (w.size() != dataset.n_metrics) {
    throw Error(ErrorCode::kShape,
                "estimator: " + std::to_string(w.size()) + " weights for " +
                    std::to_string(dataset.n_metrics) + " metrics");
  }
}

}  // namespace

Winner pair_winner(const RandomPair& pair, const WeightVector& w) {
  const double score_a = score_item(pair.item_a, w);
  const double score_b = score_item(pair.item_b, w);
  return score_a > score_b ? Winner::kA : Winner::kB;
}

MetricEstimate estimate_metrics(const PairDataset& dataset,
                                const WeightVector& w) {
  check_inputs(dataset, w);
  const auto rows = winner_labels(dataset, w);

  MetricEstimate estimate;
  estimate.pair_count = rows.size();
  estimate.values.reserve(dataset.n_metrics);
  std::vector<double> column(rows.size());
  for (std::size_t metric = 0; metric < dataset.n_metrics; ++metric) {
    for (std::size_t row = 0; row < rows.size(); ++row) {
      column[row] = rows[row][metric];
    }
    estimate.values.push_back(internal::stable_mean(column));
  }
  return estimate;
}

MetricEstimate estimate_with_ci(const PairDataset& dataset,
                                const WeightVector& w, double confidence,
                                std::size_t resamples, std::uint64_t seed) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::kParameter, "confidence must be in (0,1)");
  }
  if (resamples < 100) {
    throw Error(ErrorCode::kParameter, "need at least 100 resamples");
  }
  check_inputs(dataset, w);

  MetricEstimate estimate = estimate_metrics(dataset, w);
  const auto rows = winner_labels(dataset, w);
  const std::size_t m = rows.size();
  const std::size_t n = dataset.n_metrics;

  // Resample means, [metric][resample].
  std::vector<std::vector<double>> means(n, std::vector<double>(resamples));
  Rng rng(seed);
  std::vector<double> sums(n);
  for (std::size_t r = 0; r < resamples; ++r) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t draw = 0; draw < m; ++draw) {
      const auto& row = rows[uniform_index(rng, m)];
      for (std::size_t metric = 0; metric < n; ++metric) {
        sums[metric] += row[metric];
      }
    }
    for (std::size_t metric = 0; metric < n; ++metric) {
      means[metric][r] = sums[metric] / static_cast<double>(m);
    }
  }

  const double alpha = (1.0 - confidence) / 2.0;
  std::vector<ConfidenceInterval> intervals(n);
  for (std::size_t metric = 0; metric < n; ++metric) {
    std::sort(means[metric].begin(), means[metric].end());
    const double point = estimate.values[metric];
    intervals[metric].low =
        std::min(internal::sorted_quantile(means[metric], alpha), point);
    intervals[metric].high =
        std::max(internal::sorted_quantile(means[metric], 1.0 - alpha), point);
  }
  estimate.ci = std::move(intervals);
  estimate.confidence = confidence;
  return estimate;
}

}  // namespace act
