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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "act/domain.hpp"

namespace act {

inline constexpr const char* kFormulaKindAdditiveLinearV1 = "additive_linear_v1";

// Additive linear scalarization: r = base_score + sum_i w_i * terms_i.
// The zero weight vector reproduces the original score exactly.
double score_item(const Item& item, const WeightVector& w);

struct RankedSlate {
  std::vector<double> scores;       // aligned with the input item order
  std::vector<std::size_t> order;   // indices sorted by score descending,
                                    // ties broken by item_id ascending
};

RankedSlate rank_slate(std::span<const Item> items, const WeightVector& w);

// Where an exported formula's inputs came from.
struct Provenance {
  std::string dataset_id;
  std::string dataset_hash;
  std::string guardrail_config_hash;

  bool operator==(const Provenance&) const = default;
};

// The exported guardrailed ranking formula for one treatment. Weight values
// survive a serialize/parse round trip bit-exactly.
struct FormulaExport {
  std::string formula_kind = kFormulaKindAdditiveLinearV1;
  std::string treatment_id;
  std::vector<std::string> metric_names;
  WeightVector weights;
  std::string created_at;  // UTC, e.g. "2026-08-10T12:00:00Z"
  Provenance provenance;

  bool operator==(const FormulaExport&) const = default;
};

// Builds the export document for the selected weights. Refuses non-finite
// weights. `created_at` defaults to the current UTC time; tests and the
// pipeline pass an explicit value where byte-stable output matters.
FormulaExport export_formula(const WeightVector& weights,
                             const std::string& treatment_id,
                             const std::vector<std::string>& metric_names,
                             const Provenance& provenance,
                             std::optional<std::string> created_at = {});

// Renders / restores the export as a single JSON document. parse_formula is
// the inverse of serialize_formula on its image; unknown formula kinds raise
// ErrorCode::kUnsupportedVersion and malformed documents raise ParseError
// with a byte location.
std::string serialize_formula(const FormulaExport& doc);
FormulaExport parse_formula(const std::string& document);

}  // namespace act
