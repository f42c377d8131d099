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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "act/domain.hpp"
#include "act/selector.hpp"

namespace act {

// One recurrence tick is a single idempotent run over a list of treatments;
// scheduling recurring ticks belongs to an external scheduler.

inline constexpr int kExitOk = 0;          // all treatments feasible
inline constexpr int kExitError = 1;       // at least one treatment errored
inline constexpr int kExitInfeasible = 2;  // feasible nowhere violated, but
                                           // some treatment had no valid point

struct TreatmentSpec {
  std::string treatment_id;
  std::filesystem::path dataset_path;
  std::optional<GuardrailConfig> guardrails;  // overrides the shared config
};

struct RunConfig {
  std::vector<TreatmentSpec> treatments;
  GuardrailConfig guardrails;
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  std::string config_hash;  // hash of the config source, carried into outputs
  SelectorOptions selector;
};

struct TreatmentResult {
  std::string treatment_id;
  std::string status;  // "feasible" | "infeasible" | "error"
  std::string dataset_hash;
  std::filesystem::path export_path;  // relative to out_dir; empty if none
  WeightVector weights;
  std::string message;
};

struct RunReport {
  std::vector<TreatmentResult> treatments;
  std::filesystem::path manifest_path;
  int exit_code = kExitOk;
};

// Parses a line-delimited pair dataset and validates every invariant.
// Validation failures raise ErrorCode::kData naming the offending pair ids.
PairDataset ingest_dataset(const std::filesystem::path& path);

// For each treatment: ingest, select weights, export the guardrailed formula
// into the output directory, and record everything in a run manifest. An
// infeasible or failing treatment is marked and the run continues; the exit
// code reflects the worst outcome.
RunReport run_pipeline(const RunConfig& config);

RunConfig run_config_from_json(const std::string& json_text,
                               const std::filesystem::path& base_dir);

}  // namespace act
