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
#include <string>
#include <vector>

#include "act/domain.hpp"
#include "act/estimator.hpp"

namespace act {

// How close a guardrail came to being satisfiable: the best offline estimate
// reached anywhere on the group's grid, against its threshold.
struct MetricMargin {
  std::size_t metric = 0;
  double best_estimate = 0.0;
  double threshold = 0.0;
};

class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& message, std::vector<std::size_t> group,
                  std::vector<MetricMargin> margins)
      : Error(ErrorCode::kInfeasible, message),
        group_(std::move(group)),
        margins_(std::move(margins)) {}

  const std::vector<std::size_t>& group() const { return group_; }
  const std::vector<MetricMargin>& margins() const { return margins_; }

 private:
  std::vector<std::size_t> group_;
  std::vector<MetricMargin> margins_;
};

// Diagnostics for one group's grid search.
struct GroupSelection {
  std::vector<std::size_t> indices;        // group members, ascending
  std::vector<std::vector<double>> grid;   // every candidate sub-vector
  std::vector<bool> valid;                 // aligned with grid
  std::vector<double> chosen;              // empty when infeasible
  bool feasible = false;
  std::vector<MetricMargin> best_margins;  // per group metric, over the grid
};

struct SelectionResult {
  WeightVector weights;                    // W*; zeros where nothing selected
  std::vector<GroupSelection> per_group;
  MetricEstimate achieved;                 // estimate at W* on the input data
  bool feasible = false;
  // Grouped metrics whose guardrail no longer holds at the final W* because a
  // later group moved the weights. Reported, never re-solved in one pass.
  std::vector<std::size_t> violated_metrics;
};

struct SelectorOptions {
  // Passes over the partition. The algorithm is single-pass; values > 1 are
  // an experimental extension.
  int passes = 1;
};

struct BruteForceOptions {
  std::size_t max_grid_points = 1'000'000;
};

// Candidate sub-vectors for one group: the Cartesian product of each member
// grid, in lexicographic order (slowest-varying first by ascending metric
// index, values ascending). Values are generated as min + j*step.
std::vector<std::vector<double>> grid_points(
    const GuardrailConfig& config, const std::vector<std::size_t>& group);

// One group's grid search with every other weight held at `current`: keeps
// candidates whose group guardrails all hold, then picks the minimum-L2-norm
// sub-vector, ties broken lexicographically smallest. Throws InfeasibleError
// when no candidate is valid.
GroupSelection select_group_weights(const PairDataset& dataset,
                                    const WeightVector& current,
                                    const std::vector<std::size_t>& group,
                                    const GuardrailConfig& config);

// Grouped weight selection: starts from W = 0 and processes the partition in
// order, writing each group's choice into W. Infeasible groups keep their
// weights and mark the run infeasible rather than aborting later groups.
SelectionResult act_select(const PairDataset& dataset,
                           const GuardrailConfig& config,
                           const SelectorOptions& options = {});

// Exhaustive joint search over the full Cartesian product of all grouped
// weights; the reference the grouped search is tested against. Refuses grids
// over the configured point cap.
SelectionResult joint_brute_force(const PairDataset& dataset,
                                  const GuardrailConfig& config,
                                  const BruteForceOptions& options = {});

}  // namespace act
