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

#include "act/pipeline.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "act/ranking.hpp"
#include "act/serialization.hpp"
#include "time_util.hpp"

namespace act {

namespace {

using nlohmann::json;

std::string violations_message(const ValidationReport& report) {
  std::ostringstream out;
  out << report.violations.size() << " validation violation(s):";
  for (const Violation& v : report.violations) {
    out << " [pair '" << v.pair_id << "' " << v.field << ": " << v.message
        << "]";
  }
  return out.str();
}

}  // namespace

PairDataset ingest_dataset(const std::filesystem::path& path) {
  PairDataset dataset = read_pair_dataset(path);
  const ValidationReport report = validate_dataset(dataset);
  if (!report.ok) {
    throw Error(ErrorCode::kData,
                path.string() + ": " + violations_message(report));
  }
  return dataset;
}

RunConfig run_config_from_json(const std::string& json_text,
                               const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("run config: " + std::string(e.what()), e.byte);
  }
  try {
    RunConfig config;
    config.seed = j.value("seed", std::uint64_t{0});
    config.selector.passes = j.value("passes", 1);
    if (j.contains("guardrails")) {
      config.guardrails = guardrail_config_from_json(j.at("guardrails").dump());
    }
    std::set<std::string> ids;
    for (const auto& t : j.at("treatments")) {
      TreatmentSpec spec;
      spec.treatment_id = t.at("treatment_id").get<std::string>();
      if (!ids.insert(spec.treatment_id).second) {
        throw Error(ErrorCode::kConfig,
                    "duplicate treatment_id '" + spec.treatment_id + "'");
      }
      std::filesystem::path dataset = t.at("dataset").get<std::string>();
      spec.dataset_path = dataset.is_absolute() ? dataset : base_dir / dataset;
      if (t.contains("guardrails")) {
        spec.guardrails = guardrail_config_from_json(t.at("guardrails").dump());
      }
      config.treatments.push_back(std::move(spec));
    }
    if (config.treatments.empty()) {
      throw Error(ErrorCode::kConfig, "run config lists no treatments");
    }
    return config;
  } catch (const json::exception& e) {
    throw ParseError("run config: " + std::string(e.what()), 0);
  }
}

RunReport run_pipeline(const RunConfig& config) {
  std::filesystem::create_directories(config.out_dir);

  RunReport report;
  bool any_error = false;
  bool any_infeasible = false;

  json manifest_treatments = json::array();
  for (const TreatmentSpec& treatment : config.treatments) {
    TreatmentResult result;
    result.treatment_id = treatment.treatment_id;
    const GuardrailConfig& guardrails =
        treatment.guardrails ? *treatment.guardrails : config.guardrails;

    try {
      const PairDataset dataset = ingest_dataset(treatment.dataset_path);
      result.dataset_hash = hash_file(treatment.dataset_path);
      const SelectionResult selection =
          act_select(dataset, guardrails, config.selector);
      result.weights = selection.weights;

      if (selection.feasible) {
        result.status = "feasible";
        Provenance provenance;
        provenance.dataset_id = treatment.dataset_path.filename().string();
        provenance.dataset_hash = result.dataset_hash;
        provenance.guardrail_config_hash =
            fnv1a64_hex(guardrail_config_to_json(guardrails));
        const FormulaExport formula =
            export_formula(selection.weights, treatment.treatment_id,
                           dataset.metric_names, provenance);
        result.export_path = "formula_" + treatment.treatment_id + ".json";
        std::ofstream out(config.out_dir / result.export_path,
                          std::ios::binary);
        if (!out) {
          throw Error(ErrorCode::kIo, "cannot write formula export");
        }
        out << serialize_formula(formula);
      } else {
        // An unguardrailed formula must not reach serving; record the best
        // weights in the manifest and export nothing.
        result.status = "infeasible";
        any_infeasible = true;
        std::ostringstream msg;
        msg << "no valid grid point for group(s):";
        for (const GroupSelection& group : selection.per_group) {
          if (!group.feasible) msg << " " << json(group.indices).dump();
        }
        if (!selection.violated_metrics.empty()) {
          msg << "; guardrails re-violated at final weights for metrics "
              << json(selection.violated_metrics).dump();
        }
        result.message = msg.str();
      }
    } catch (const Error& e) {
      result.status = "error";
      result.message = std::string(error_code_name(e.code())) + ": " + e.what();
      any_error = true;
    }

    manifest_treatments.push_back(
        {{"treatment_id", result.treatment_id},
         {"dataset_path", treatment.dataset_path.filename().string()},
         {"dataset_hash", result.dataset_hash},
         {"status", result.status},
         {"export_path", result.export_path.string()},
         {"weights", result.weights.weights},
         {"message", result.message}});
    report.treatments.push_back(std::move(result));
  }

  const json manifest = {{"kind", "run_manifest"},
                         {"created_at", internal::utc_now_string()},
                         {"config_hash", config.config_hash},
                         {"seed", config.seed},
                         {"treatments", manifest_treatments}};
  report.manifest_path = config.out_dir / "manifest.json";
  std::ofstream out(report.manifest_path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo,
                "cannot write " + report.manifest_path.string());
  }
  out << manifest.dump(2) << "\n";

  report.exit_code =
      any_error ? kExitError : (any_infeasible ? kExitInfeasible : kExitOk);
  return report;
}

}  // namespace act
