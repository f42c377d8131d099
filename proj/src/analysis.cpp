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

#include "act/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "act/rng.hpp"
#include "stat_util.hpp"

namespace act {

namespace {

enum SeedStream : std::uint64_t {
  kStreamPairLog = 0,
  kStreamOnlineBaseline = 1,
  kStreamOnlineVariants = 2,  // + variant index
};

std::vector<std::size_t> sorted_copy(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Partition as a canonical multiset of sorted groups.
std::vector<std::vector<std::size_t>> canonical_partition(
    const std::vector<std::vector<std::size_t>>& partition) {
  std::vector<std::vector<std::size_t>> canon;
  canon.reserve(partition.size());
  for (const auto& group : partition) canon.push_back(sorted_copy(group));
  std::sort(canon.begin(), canon.end());
  return canon;
}

// Mean winner label per metric of a bootstrap resample drawn from the
// recorded impressions.
std::vector<double> resample_means(const Corpus& corpus,
                                   const OnlineSample& sample, Rng& rng) {
  const std::size_t count = sample.winner_indices.size();
  const std::size_t n = corpus.metric_names.size();
  std::vector<double> sums(n, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& labels =
        corpus.items[sample.winner_indices[uniform_index(rng, count)]].labels;
    for (std::size_t metric = 0; metric < n; ++metric) {
      sums[metric] += labels[metric];
    }
  }
  for (double& s : sums) s /= static_cast<double>(count);
  return sums;
}

std::vector<double> online_means(const Corpus& corpus,
                                 const OnlineSample& sample) {
  const std::size_t n = corpus.metric_names.size();
  std::vector<double> means(n);
  std::vector<double> column(sample.winner_indices.size());
  for (std::size_t metric = 0; metric < n; ++metric) {
    for (std::size_t i = 0; i < column.size(); ++i) {
      column[i] = corpus.items[sample.winner_indices[i]].labels[metric];
    }
    means[metric] = internal::stable_mean(column);
  }
  return means;
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kParameter, "pearson: length mismatch");
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kParameter, "pearson: need at least 2 points");
  }
  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kParameter,
                "pearson: correlation undefined for a constant input");
  }
  // Single square root of the product so that identical inputs give exactly
  // 1.0 (sqrt(s*s) == s for every normal double).
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

CorrelationReport correlation_study(const Corpus& corpus,
                                    const std::vector<WeightVector>& variants,
                                    const CorrelationStudyConfig& config) {
  if (variants.size() < 2) {
    throw Error(ErrorCode::kParameter,
                "correlation study needs at least 2 variants");
  }
  if (config.metric_index >= corpus.metric_names.size()) {
    throw Error(ErrorCode::kParameter, "metric index out of range");
  }

  CorrelationReport report;
  report.metric_index = config.metric_index;
  if (variants.size() < 10) {
    report.warnings.push_back(
        "fewer than 10 variants; the correlation estimate will be noisy");
  }

  const std::uint64_t log_seed = derive_seed(config.seed, kStreamPairLog);
  const PairDataset dataset =
      log_random_pairs(corpus, config.pair_count, log_seed);
  const WeightVector zero = WeightVector::zeros(corpus.metric_names.size());

  const auto offline_at = [&](const WeightVector& w) {
    return estimate_metrics(dataset, w).values[config.metric_index];
  };
  const auto online_at = [&](const WeightVector& w, std::uint64_t stream) {
    const std::uint64_t seed = config.online_reuses_pair_seed
                                   ? log_seed
                                   : derive_seed(config.seed, stream);
    const std::size_t impressions = config.online_reuses_pair_seed
                                        ? config.pair_count
                                        : config.impressions;
    return simulate_online_metric(corpus, w, impressions, seed)
        .values[config.metric_index];
  };

  const double offline_base = offline_at(zero);
  const double online_base = online_at(zero, kStreamOnlineBaseline);

  std::vector<double> offline_deltas;
  std::vector<double> online_deltas;
  offline_deltas.reserve(variants.size());
  online_deltas.reserve(variants.size());
  for (std::size_t v = 0; v < variants.size(); ++v) {
    CorrelationRow row;
    char id[16];
    std::snprintf(id, sizeof(id), "v%03zu", v);
    row.variant_id = id;
    row.offline_delta = offline_at(variants[v]) - offline_base;
    row.online_delta = online_at(variants[v], kStreamOnlineVariants + v) -
                       online_base;
    offline_deltas.push_back(row.offline_delta);
    online_deltas.push_back(row.online_delta);
    report.rows.push_back(std::move(row));
  }

  report.pearson_r = pearson(offline_deltas, online_deltas);
  report.sample_count = variants.size();
  return report;
}

std::vector<WeightVector> make_variant_sweep(std::size_t n_metrics,
                                             std::size_t per_axis,
                                             std::size_t random_count,
                                             double w_max,
                                             std::uint64_t seed) {
  if (n_metrics == 0 || w_max <= 0.0) {
    throw Error(ErrorCode::kParameter, "sweep needs n_metrics >= 1, w_max > 0");
  }
  std::vector<WeightVector> variants;
  variants.reserve(n_metrics * per_axis + random_count);
  // Geometric ladder from w_max/2^(per_axis-1) up to w_max on each axis.
  for (std::size_t metric = 0; metric < n_metrics; ++metric) {
    double value = w_max;
    for (std::size_t k = 0; k < per_axis; ++k) {
      WeightVector w = WeightVector::zeros(n_metrics);
      w[metric] = value;
      variants.push_back(std::move(w));
      value /= 2.0;
    }
  }
  Rng rng(seed);
  for (std::size_t k = 0; k < random_count; ++k) {
    WeightVector w = WeightVector::zeros(n_metrics);
    for (std::size_t metric = 0; metric < n_metrics; ++metric) {
      w[metric] = uniform_range(rng, 0.0, w_max);
    }
    variants.push_back(std::move(w));
  }
  return variants;
}

PathIndependenceReport path_independence_check(
    const PairDataset& dataset, const GuardrailConfig& config,
    const std::vector<std::vector<std::vector<std::size_t>>>& orderings) {
  if (orderings.size() < 2) {
    throw Error(ErrorCode::kParameter, "need at least 2 group orderings");
  }
  const auto reference = canonical_partition(config.partition);
  for (const auto& ordering : orderings) {
    if (canonical_partition(ordering) != reference) {
      throw Error(ErrorCode::kParameter,
                  "ordering is not a permutation of the config partition");
    }
  }

  PathIndependenceReport report;
  report.orderings = orderings;
  report.selected.reserve(orderings.size());
  for (const auto& ordering : orderings) {
    GuardrailConfig permuted = config;
    permuted.partition = ordering;
    report.selected.push_back(act_select(dataset, permuted).weights);
  }
  report.identical = std::all_of(
      report.selected.begin(), report.selected.end(),
      [&](const WeightVector& w) { return w == report.selected.front(); });
  return report;
}

GuardrailExperimentReport guardrail_experiment(
    const Corpus& prod_corpus, const ExperimentConfig& config,
    const WeightVector& fixed_w, const GuardrailConfig& act_config) {
  const std::size_t n = prod_corpus.metric_names.size();
  if (fixed_w.size() != n) {
    throw Error(ErrorCode::kShape, "fixed weight length mismatch");
  }

  const Corpus decrease_corpus =
      make_decrease_variant(prod_corpus, config.decrease_metric,
                            config.decrease_magnitude,
                            derive_seed(config.seed, 100));

  GuardrailConfig thresholds = act_config;
  if (config.thresholds_are_offsets) {
    const PairDataset baseline_pairs = log_random_pairs(
        prod_corpus, config.pair_count, derive_seed(config.seed, 101));
    const MetricEstimate baseline =
        estimate_metrics(baseline_pairs, WeightVector::zeros(n));
    for (std::size_t metric = 0; metric < n; ++metric) {
      thresholds.thresholds[metric] += baseline.values[metric];
    }
  }
  validate_config(thresholds, n);

  GuardrailExperimentReport report;
  report.thresholds_used = thresholds.thresholds;
  report.decrease_metric = config.decrease_metric;

  struct ArmSpec {
    const char* variant;
    const char* method;
    const Corpus* corpus;
  };
  const ArmSpec specs[] = {
      {"prod", "fixed", &prod_corpus},
      {"prod", "act", &prod_corpus},
      {"decrease", "fixed", &decrease_corpus},
      {"decrease", "act", &decrease_corpus},
  };

  std::vector<OnlineSample> samples;
  for (std::size_t arm_index = 0; arm_index < 4; ++arm_index) {
    const ArmSpec& spec = specs[arm_index];
    ArmReport arm;
    arm.variant = spec.variant;
    arm.method = spec.method;
    arm.is_baseline = arm_index == 0;

    if (std::string(spec.method) == "act") {
      const PairDataset pairs =
          log_random_pairs(*spec.corpus, config.pair_count,
                           derive_seed(config.seed, 200 + arm_index));
      const SelectionResult selection = act_select(pairs, thresholds);
      arm.feasible = selection.feasible;
      arm.weights_used = selection.weights;
    } else {
      arm.weights_used = fixed_w;
    }

    const OnlineSample sample = simulate_online_sample(
        *spec.corpus, arm.weights_used, config.impressions,
        derive_seed(config.seed, 300 + arm_index));
    arm.online_values = online_means(*spec.corpus, sample);
    samples.push_back(sample);
    report.arms.push_back(std::move(arm));
  }

  const ArmReport& baseline = report.arms.front();
  for (double value : baseline.online_values) {
    if (value == 0.0) {
      throw Error(ErrorCode::kData,
                  "baseline arm metric is exactly 0; relative deltas are "
                  "undefined");
    }
  }

  for (std::size_t arm_index = 0; arm_index < report.arms.size(); ++arm_index) {
    ArmReport& arm = report.arms[arm_index];
    arm.delta.resize(n, 0.0);
    arm.delta_ci.assign(n, ConfidenceInterval{});
    if (arm.is_baseline) continue;  // delta vs itself is 0 with a (0,0) CI

    for (std::size_t metric = 0; metric < n; ++metric) {
      arm.delta[metric] =
          (arm.online_values[metric] - baseline.online_values[metric]) /
          baseline.online_values[metric];
    }

    // Percentile bootstrap of the relative delta, resampling the arm and the
    // baseline impressions independently.
    Rng rng(derive_seed(config.seed, 400 + arm_index));
    std::vector<std::vector<double>> deltas(
        n, std::vector<double>(config.resamples));
    for (std::size_t r = 0; r < config.resamples; ++r) {
      const std::vector<double> arm_means =
          resample_means(*specs[arm_index].corpus, samples[arm_index], rng);
      const std::vector<double> base_means =
          resample_means(prod_corpus, samples[0], rng);
      for (std::size_t metric = 0; metric < n; ++metric) {
        deltas[metric][r] =
            (arm_means[metric] - base_means[metric]) / base_means[metric];
      }
    }
    const double alpha = (1.0 - config.confidence) / 2.0;
    for (std::size_t metric = 0; metric < n; ++metric) {
      std::sort(deltas[metric].begin(), deltas[metric].end());
      arm.delta_ci[metric].low =
          internal::sorted_quantile(deltas[metric], alpha);
      arm.delta_ci[metric].high =
          internal::sorted_quantile(deltas[metric], 1.0 - alpha);
    }
  }
  return report;
}

}  // namespace act
