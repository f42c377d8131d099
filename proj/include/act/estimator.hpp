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
#include <optional>
#include <vector>

#include "act/domain.hpp"

namespace act {

enum class Winner { kA, kB };

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
};

// Offline estimate of each secondary metric under a candidate weight vector:
// the mean item-level label over the higher-scored item of every pair.
struct MetricEstimate {
  std::vector<double> values;
  std::size_t pair_count = 0;
  std::optional<std::vector<ConfidenceInterval>> ci;
  double confidence = 0.0;  // meaningful only when ci is present
};

// A wins on strictly higher score; ties go to B. The asymmetry is part of
// the estimator's definition, not a detail: logged pairs randomize the A/B
// assignment, so the tie rule stays unbiased.
Winner pair_winner(const RandomPair& pair, const WeightVector& w);

// Mean winner label per metric. The mean is computed over the sorted
// contributions, so permuting the pair order leaves the output bit-identical.
MetricEstimate estimate_metrics(const PairDataset& dataset,
                                const WeightVector& w);

// Adds seeded percentile-bootstrap intervals (resampling whole pairs).
// Requires confidence in (0, 1) and resamples >= 100; identical seeds give
// identical intervals.
MetricEstimate estimate_with_ci(const PairDataset& dataset,
                                const WeightVector& w, double confidence,
                                std::size_t resamples, std::uint64_t seed);

}  // namespace act
