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

#include "act/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <json.hpp>

#include "time_util.hpp"

namespace act {

double score_item(const Item& item, const WeightVector& w) {
  if (item.terms.size() != w.size()) {
    throw Error(ErrorCode::kShape,
                "item '" + item.item_id + "' has " +
                    std::to_string(item.terms.size()) + " terms but got " +
                    std::to_string(w.size()) + " weights");
  }
  double score = item.base_score;
  for (std::size_t i = 0; i < w.size(); ++i) {
    score += w[i] * item.terms[i];
  }
  return score;
}

RankedSlate rank_slate(std::span<const Item> items, const WeightVector& w) {
  if (items.empty()) {
    throw Error(ErrorCode::kEmptyInput, "rank_slate: no items");
  }
  RankedSlate slate;
  slate.scores.reserve(items.size());
  for (const Item& item : items) {
    slate.scores.push_back(score_item(item, w));
  }
  slate.order.resize(items.size());
  std::iota(slate.order.begin(), slate.order.end(), std::size_t{0});
  std::sort(slate.order.begin(), slate.order.end(),
            [&](std::size_t a, std::size_t b) {
              if (slate.scores[a] != slate.scores[b]) {
                return slate.scores[a] > slate.scores[b];
              }
              return items[a].item_id < items[b].item_id;
            });
  return slate;
}

FormulaExport export_formula(const WeightVector& weights,
                             const std::string& treatment_id,
                             const std::vector<std::string>& metric_names,
                             const Provenance& provenance,
                             std::optional<std::string> created_at) {
  if (weights.size() != metric_names.size()) {
    throw Error(ErrorCode::kShape,
                "got " + std::to_string(weights.size()) + " weights for " +
                    std::to_string(metric_names.size()) + " metric names");
  }
  for (double w : weights.weights) {
    if (!std::isfinite(w)) {
      throw Error(ErrorCode::kNonFinite,
                  "refusing to export non-finite weight");
    }
  }
  FormulaExport doc;
  doc.treatment_id = treatment_id;
  doc.metric_names = metric_names;
  doc.weights = weights;
  doc.created_at =
      created_at ? std::move(*created_at) : internal::utc_now_string();
  doc.provenance = provenance;
  return doc;
}

std::string serialize_formula(const FormulaExport& doc) {
  nlohmann::json j;
  j["formula_kind"] = doc.formula_kind;
  j["treatment_id"] = doc.treatment_id;
  j["metric_names"] = doc.metric_names;
  j["weights"] = doc.weights.weights;
  j["created_at"] = doc.created_at;
  j["provenance"] = {
      {"dataset_id", doc.provenance.dataset_id},
      {"dataset_hash", doc.provenance.dataset_hash},
      {"guardrail_config_hash", doc.provenance.guardrail_config_hash},
  };
  return j.dump(2) + "\n";
}

FormulaExport parse_formula(const std::string& document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("formula document: " + std::string(e.what()), e.byte);
  }
  try {
    const auto kind = j.at("formula_kind").get<std::string>();
    if (kind != kFormulaKindAdditiveLinearV1) {
      throw Error(ErrorCode::kUnsupportedVersion,
                  "unsupported formula_kind '" + kind + "'");
    }
    FormulaExport doc;
    doc.formula_kind = kind;
    doc.treatment_id = j.at("treatment_id").get<std::string>();
    doc.metric_names = j.at("metric_names").get<std::vector<std::string>>();
    doc.weights = WeightVector(j.at("weights").get<std::vector<double>>());
    doc.created_at = j.at("created_at").get<std::string>();
    const auto& prov = j.at("provenance");
    doc.provenance.dataset_id = prov.at("dataset_id").get<std::string>();
    doc.provenance.dataset_hash = prov.at("dataset_hash").get<std::string>();
    doc.provenance.guardrail_config_hash =
        prov.at("guardrail_config_hash").get<std::string>();
    if (doc.weights.size() != doc.metric_names.size()) {
      throw ParseError("formula document: weights/metric_names length mismatch",
                       0);
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("formula document: " + std::string(e.what()), 0);
  }
}

}  // namespace act
