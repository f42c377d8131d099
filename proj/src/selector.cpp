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

#include "act/selector.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace act {

namespace {

std::vector<std::size_t> sorted_group(const std::vector<std::size_t>& group) {
  std::vector<std::size_t> indices = group;
  std::sort(indices.begin(), indices.end());
  return indices;
}

double norm_squared(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return sum;
}

std::string format_group(const std::vector<std::size_t>& indices) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out << (i ? "," : "") << indices[i];
  }
  out << "}";
  return out.str();
}

std::string infeasible_message(const std::vector<std::size_t>& group,
                               const std::vector<MetricMargin>& margins) {
  std::ostringstream out;
  out << "no grid point satisfies guardrails for group " << format_group(group)
      << "; best margins:";
  for (const MetricMargin& m : margins) {
    out << " metric " << m.metric << " reached " << m.best_estimate
        << " vs threshold " << m.threshold << ";";
  }
  return out.str();
}

// Grid search over one group with the rest of the weights frozen. Candidates
// arrive in lexicographic order, so keeping the first strict norm improvement
// doubles as the lexicographic-smallest tie rule.
GroupSelection evaluate_group(const PairDataset& dataset,
                              const WeightVector& current,
                              const std::vector<std::size_t>& group,
                              const GuardrailConfig& config) {
  GroupSelection selection;
  selection.indices = sorted_group(group);
  selection.grid = grid_points(config, selection.indices);
  selection.valid.assign(selection.grid.size(), false);

  selection.best_margins.reserve(selection.indices.size());
  for (std::size_t metric : selection.indices) {
    selection.best_margins.push_back(
        {metric, -std::numeric_limits<double>::infinity(),
         config.thresholds[metric]});
  }

  double best_norm = std::numeric_limits<double>::infinity();
  WeightVector candidate = current;
  for (std::size_t c = 0; c < selection.grid.size(); ++c) {
    const std::vector<double>& point = selection.grid[c];
    for (std::size_t k = 0; k < selection.indices.size(); ++k) {
      candidate[selection.indices[k]] = point[k];
    }
    const MetricEstimate estimate = estimate_metrics(dataset, candidate);

    bool valid = true;
    for (std::size_t k = 0; k < selection.indices.size(); ++k) {
      const std::size_t metric = selection.indices[k];
      const double value = estimate.values[metric];
      auto& margin = selection.best_margins[k];
      margin.best_estimate = std::max(margin.best_estimate, value);
      if (value < config.thresholds[metric]) {
        valid = false;
      }
    }
    if (!valid) continue;

    selection.valid[c] = true;
    const double norm = norm_squared(point);
    if (norm < best_norm) {
      best_norm = norm;
      selection.chosen = point;
      selection.feasible = true;
    }
  }
  return selection;
}

void apply_choice(WeightVector& w, const GroupSelection& selection) {
  for (std::size_t k = 0; k < selection.indices.size(); ++k) {
    w[selection.indices[k]] = selection.chosen[k];
  }
}

}  // namespace

std::vector<std::vector<double>> grid_points(
    const GuardrailConfig& config, const std::vector<std::size_t>& group) {
  const std::vector<std::size_t> indices = sorted_group(group);
  std::vector<std::vector<double>> axes;
  axes.reserve(indices.size());
  for (std::size_t index : indices) {
    const auto it = config.grids.find(index);
    if (it == config.grids.end()) {
      throw Error(ErrorCode::kConfig,
                  "no grid spec for metric " + std::to_string(index));
    }
    axes.push_back(grid_values(it->second));
  }

  std::size_t total = 1;
  for (const auto& axis : axes) total *= axis.size();

  std::vector<std::vector<double>> points;
  points.reserve(total);
  std::vector<std::size_t> odometer(axes.size(), 0);
  for (std::size_t p = 0; p < total; ++p) {
    std::vector<double> point(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) {
      point[k] = axes[k][odometer[k]];
    }
    points.push_back(std::move(point));
    for (std::size_t k = axes.size(); k-- > 0;) {
      if (++odometer[k] < axes[k].size()) break;
      odometer[k] = 0;
    }
  }
  return points;
}

GroupSelection select_group_weights(const PairDataset& dataset,
                                    const WeightVector& current,
                                    const std::vector<std::size_t>& group,
                                    const GuardrailConfig& config) {
  GroupSelection selection = evaluate_group(dataset, current, group, config);
  if (!selection.feasible) {
    throw InfeasibleError(
        infeasible_message(selection.indices, selection.best_margins),
        selection.indices, selection.best_margins);
  }
  return selection;
}

SelectionResult act_select(const PairDataset& dataset,
                           const GuardrailConfig& config,
                           const SelectorOptions& options) {
  validate_config(config, dataset.n_metrics);
  if (options.passes < 1) {
    throw Error(ErrorCode::kParameter, "passes must be >= 1");
  }

  SelectionResult result;
  result.weights = WeightVector::zeros(dataset.n_metrics);
  bool all_groups_feasible = true;

  for (int pass = 0; pass < options.passes; ++pass) {
    for (const auto& group : config.partition) {
      GroupSelection selection =
          evaluate_group(dataset, result.weights, group, config);
      if (selection.feasible) {
        apply_choice(result.weights, selection);
      } else {
        all_groups_feasible = false;
      }
      result.per_group.push_back(std::move(selection));
    }
  }

  result.achieved = estimate_metrics(dataset, result.weights);
  for (const auto& group : config.partition) {
    for (std::size_t metric : group) {
      if (result.achieved.values[metric] < config.thresholds[metric]) {
        result.violated_metrics.push_back(metric);
      }
    }
  }
  std::sort(result.violated_metrics.begin(), result.violated_metrics.end());
  result.feasible = all_groups_feasible && result.violated_metrics.empty();
  return result;
}

SelectionResult joint_brute_force(const PairDataset& dataset,
                                  const GuardrailConfig& config,
                                  const BruteForceOptions& options) {
  validate_config(config, dataset.n_metrics);

  std::vector<std::size_t> all_indices;
  for (const auto& group : config.partition) {
    all_indices.insert(all_indices.end(), group.begin(), group.end());
  }
  std::sort(all_indices.begin(), all_indices.end());

  std::size_t total = 1;
  for (std::size_t index : all_indices) {
    const std::size_t axis = grid_values(config.grids.at(index)).size();
    if (total > options.max_grid_points / axis) {
      throw Error(ErrorCode::kRefused,
                  "joint grid has at least " + std::to_string(total * axis) +
                      " points, over the cap of " +
                      std::to_string(options.max_grid_points));
    }
    total *= axis;
  }

  SelectionResult result;
  result.weights = WeightVector::zeros(dataset.n_metrics);
  GroupSelection joint =
      evaluate_group(dataset, result.weights, all_indices, config);
  if (!joint.feasible) {
    throw InfeasibleError(infeasible_message(joint.indices, joint.best_margins),
                          joint.indices, joint.best_margins);
  }
  apply_choice(result.weights, joint);
  result.per_group.push_back(std::move(joint));
  result.achieved = estimate_metrics(dataset, result.weights);
  result.feasible = true;
  return result;
}

}  // namespace act
