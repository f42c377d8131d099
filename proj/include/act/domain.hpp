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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "act/error.hpp"

namespace act {

// A ranked candidate. `terms` holds the per-secondary-metric ranking formula
// term values and `labels` the item-level metric analogues, both aligned to
// the dataset's metric index order. Labels live in [0, 1]; binary events are
// encoded as {0, 1}.
struct Item {
  std::string item_id;
  double base_score = 0.0;
  std::vector<double> terms;
  std::vector<double> labels;

  bool operator==(const Item&) const = default;
};

// One logged two-arm trial: two distinct items sampled uniformly from the
// nomination pool. Stored as (A, B) with the A/B assignment randomized at
// logging time, because the winner rule is A/B-asymmetric on ties.
struct RandomPair {
  Item item_a;
  Item item_b;
  std::string pair_id;

  bool operator==(const RandomPair&) const = default;
};

// The randomized-pairs substrate of all offline evaluation for one treatment.
struct PairDataset {
  std::vector<RandomPair> pairs;
  std::size_t n_metrics = 0;
  std::vector<std::string> metric_names;
  std::string treatment_id;

  bool operator==(const PairDataset&) const = default;
};

// Per-secondary-metric ranking hyperparameters; the zero vector recovers the
// original ranking.
struct WeightVector {
  std::vector<double> weights;

  WeightVector() = default;
  explicit WeightVector(std::vector<double> w) : weights(std::move(w)) {}

  static WeightVector zeros(std::size_t n) {
    return WeightVector(std::vector<double>(n, 0.0));
  }

  std::size_t size() const { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }
  double& operator[](std::size_t i) { return weights[i]; }

  bool operator==(const WeightVector&) const = default;
};

// Arithmetic candidate sequence {min, min + step, ...} clipped to max.
// Every grid must contain 0 so a pre-satisfied guardrail can keep its
// weight at zero.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  bool operator==(const GridSpec&) const = default;
};

// Guardrail thresholds, the objective partition, and per-weight grids.
// `partition` lists disjoint groups of metric indices; indices not covered by
// any group keep weight 0 and are not constrained. Every grouped index must
// have a grid spec.
struct GuardrailConfig {
  std::vector<double> thresholds;
  std::vector<std::vector<std::size_t>> partition;
  std::map<std::size_t, GridSpec> grids;

  bool operator==(const GuardrailConfig&) const = default;
};

struct Violation {
  std::string pair_id;  // empty for dataset-level violations
  std::string field;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Checks every Item/RandomPair/PairDataset invariant. Violations are data,
// not exceptions; the report names the offending pair_id and field.
ValidationReport validate_dataset(const PairDataset& dataset);

// Throws ErrorCode::kConfig if the guardrail config is inconsistent with
// itself or with a dataset of `n_metrics` metrics.
void validate_config(const GuardrailConfig& config, std::size_t n_metrics);

// Candidate values of one grid: min + j*step for j = 0.. while the value
// stays within max (tolerant of last-step rounding). The point nearest zero
// is snapped to exactly 0.0 when it is within rounding noise of it.
std::vector<double> grid_values(const GridSpec& spec);

}  // namespace act
