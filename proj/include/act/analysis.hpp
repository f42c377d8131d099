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
#include <span>
#include <string>
#include <vector>

#include "act/domain.hpp"
#include "act/estimator.hpp"
#include "act/selector.hpp"
#include "act/simulator.hpp"

namespace act {

// Sample Pearson coefficient. Requires equal lengths >= 2 and non-constant
// inputs (a constant vector has no defined correlation).
double pearson(std::span<const double> xs, std::span<const double> ys);

struct CorrelationRow {
  std::string variant_id;
  double offline_delta = 0.0;  // offline estimate minus the W=0 baseline
  double online_delta = 0.0;   // simulated online value minus the baseline
};

struct CorrelationReport {
  std::vector<CorrelationRow> rows;
  double pearson_r = 0.0;
  std::size_t sample_count = 0;
  std::size_t metric_index = 0;
  std::vector<std::string> warnings;
};

struct CorrelationStudyConfig {
  std::size_t pair_count = 0;
  std::size_t impressions = 0;
  std::size_t metric_index = 0;
  std::uint64_t seed = 0;
  // Diagnostic mode: drive the online simulation with the exact seed and
  // sample count used for pair logging, making both sides the same Monte
  // Carlo process (deltas match bit for bit and the correlation is 1).
  bool online_reuses_pair_seed = false;
};

// Offline-vs-online predictiveness study: one logged dataset scores every
// variant offline, fresh simulations score them online, and the report
// correlates the two delta axes.
CorrelationReport correlation_study(const Corpus& corpus,
                                    const std::vector<WeightVector>& variants,
                                    const CorrelationStudyConfig& config);

// Default variant set for the study: a geometric sweep along each weight
// axis plus random joint vectors.
std::vector<WeightVector> make_variant_sweep(std::size_t n_metrics,
                                             std::size_t per_axis,
                                             std::size_t random_count,
                                             double w_max, std::uint64_t seed);

struct PathIndependenceReport {
  std::vector<std::vector<std::vector<std::size_t>>> orderings;
  std::vector<WeightVector> selected;  // W* per ordering
  bool identical = false;              // all W* agree bit-exactly
};

// Runs the grouped selection once per group ordering. Every ordering must be
// a permutation of the config's partition.
PathIndependenceReport path_independence_check(
    const PairDataset& dataset, const GuardrailConfig& config,
    const std::vector<std::vector<std::vector<std::size_t>>>& orderings);

struct ExperimentConfig {
  std::size_t decrease_metric = 0;
  double decrease_magnitude = 1.0;
  std::size_t pair_count = 0;
  std::size_t impressions = 0;
  std::size_t resamples = 300;
  double confidence = 0.95;
  std::uint64_t seed = 0;
  // When set, guardrail thresholds are read as offsets added to the prod
  // arm's offline W=0 baseline instead of absolute levels.
  bool thresholds_are_offsets = false;
};

struct ArmReport {
  std::string variant;  // "prod" | "decrease"
  std::string method;   // "fixed" | "act"
  bool is_baseline = false;
  bool feasible = true;                  // false when ACT found no valid point
  WeightVector weights_used;
  std::vector<double> online_values;     // simulated metric levels
  std::vector<double> delta;             // relative change vs baseline arm
  std::vector<ConfidenceInterval> delta_ci;
};

struct GuardrailExperimentReport {
  std::vector<ArmReport> arms;  // prod/fixed, prod/act, decrease/fixed,
                                // decrease/act; prod/fixed is the baseline
  std::vector<double> thresholds_used;
  std::size_t decrease_metric = 0;
};

// The 2x2 guardrail-enforcement experiment: {prod, decrease variant} x
// {fixed weights, ACT-selected weights}, each arm simulated online, deltas
// reported against the prod/fixed baseline with bootstrap CIs. ACT arms log
// their own pairs from their own corpus.
GuardrailExperimentReport guardrail_experiment(const Corpus& prod_corpus,
                                               const ExperimentConfig& config,
                                               const WeightVector& fixed_w,
                                               const GuardrailConfig& act_config);

}  // namespace act
