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

#include "act/domain.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace act {

namespace {

// Safety stop for arithmetic sequences; anything near this is a config typo.
constexpr double kMaxGridValuesPerDim = 1e9;

bool all_finite(const std::vector<double>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void check_item(const Item& item, const std::string& pair_id,
                const std::string& side, std::size_t n_metrics,
                std::vector<Violation>& out) {
  if (item.terms.size() != n_metrics) {
    out.push_back({pair_id, side + ".terms",
                   "expected " + std::to_string(n_metrics) + " terms, got " +
                       std::to_string(item.terms.size())});
  }
  if (item.labels.size() != n_metrics) {
    out.push_back({pair_id, side + ".labels",
                   "expected " + std::to_string(n_metrics) + " labels, got " +
                       std::to_string(item.labels.size())});
  }
  if (!std::isfinite(item.base_score)) {
    out.push_back({pair_id, side + ".base_score", "non-finite value"});
  }
  if (!all_finite(item.terms)) {
    out.push_back({pair_id, side + ".terms", "non-finite value"});
  }
  for (double label : item.labels) {
    if (!std::isfinite(label)) {
      out.push_back({pair_id, side + ".labels", "non-finite value"});
      break;
    }
    if (label < 0.0 || label > 1.0) {
      out.push_back({pair_id, side + ".labels", "label out of [0,1]"});
      break;
    }
  }
}

std::size_t sequence_length(const GridSpec& spec) {
  // Tolerant of the last step landing a rounding error past max.
  const double raw = (spec.max - spec.min) / spec.step + 1e-9;
  if (raw >= kMaxGridValuesPerDim) {
    throw Error(ErrorCode::kConfig,
                "grid {min=" + std::to_string(spec.min) +
                    ", max=" + std::to_string(spec.max) +
                    ", step=" + std::to_string(spec.step) +
                    "} has too many values");
  }
  return static_cast<std::size_t>(raw) + 1;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kData: return "data";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kUnsupportedVersion: return "unsupported_version";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kRefused: return "refused";
  }
  return "unknown";
}

ValidationReport validate_dataset(const PairDataset& dataset) {
  ValidationReport report;
  auto& out = report.violations;

  if (dataset.pairs.empty()) {
    out.push_back({"", "pairs", "dataset has no pairs"});
  }
  if (dataset.metric_names.size() != dataset.n_metrics) {
    out.push_back({"", "metric_names",
                   "expected " + std::to_string(dataset.n_metrics) +
                       " names, got " +
                       std::to_string(dataset.metric_names.size())});
  }
  for (const RandomPair& pair : dataset.pairs) {
    if (pair.item_a.item_id == pair.item_b.item_id) {
      out.push_back(
          {pair.pair_id, "item_b.item_id", "pair repeats a single item"});
    }
    check_item(pair.item_a, pair.pair_id, "item_a", dataset.n_metrics, out);
    check_item(pair.item_b, pair.pair_id, "item_b", dataset.n_metrics, out);
  }

  report.ok = out.empty();
  return report;
}

void validate_config(const GuardrailConfig& config, std::size_t n_metrics) {
  if (config.thresholds.size() != n_metrics) {
    throw Error(ErrorCode::kConfig,
                "expected " + std::to_string(n_metrics) + " thresholds, got " +
                    std::to_string(config.thresholds.size()));
  }
  if (!all_finite(config.thresholds)) {
    throw Error(ErrorCode::kConfig, "non-finite threshold");
  }

  std::set<std::size_t> seen;
  for (const auto& group : config.partition) {
    if (group.empty()) {
      throw Error(ErrorCode::kConfig, "empty group in partition");
    }
    for (std::size_t index : group) {
      if (index >= n_metrics) {
        throw Error(ErrorCode::kConfig,
                    "group index " + std::to_string(index) +
                        " out of range for " + std::to_string(n_metrics) +
                        " metrics");
      }
      if (!seen.insert(index).second) {
        throw Error(ErrorCode::kConfig,
                    "metric " + std::to_string(index) +
                        " appears in more than one group");
      }
      if (!config.grids.count(index)) {
        throw Error(ErrorCode::kConfig,
                    "no grid spec for grouped metric " + std::to_string(index));
      }
    }
  }

  for (const auto& [index, spec] : config.grids) {
    std::ostringstream label;
    label << "grid for metric " << index;
    if (!std::isfinite(spec.min) || !std::isfinite(spec.max) ||
        !std::isfinite(spec.step)) {
      throw Error(ErrorCode::kConfig, label.str() + ": non-finite bound");
    }
    if (spec.step <= 0.0) {
      throw Error(ErrorCode::kConfig, label.str() + ": step must be > 0");
    }
    if (spec.min > spec.max) {
      throw Error(ErrorCode::kConfig, label.str() + ": min > max");
    }
    const std::size_t len = sequence_length(spec);
    // A grid without 0 could never leave a pre-satisfied guardrail alone.
    const double j = std::round(-spec.min / spec.step);
    const bool has_zero = j >= 0.0 && j < static_cast<double>(len) &&
                          std::fabs(spec.min + j * spec.step) <=
                              spec.step * 1e-9;
    if (!has_zero) {
      throw Error(ErrorCode::kConfig, label.str() + ": must contain 0");
    }
  }
}

std::vector<double> grid_values(const GridSpec& spec) {
  const std::size_t len = sequence_length(spec);
  std::vector<double> values;
  values.reserve(len);
  for (std::size_t j = 0; j < len; ++j) {
    double v = spec.min + static_cast<double>(j) * spec.step;
    if (std::fabs(v) <= spec.step * 1e-9) v = 0.0;
    values.push_back(v);
  }
  return values;
}

}  // namespace act
