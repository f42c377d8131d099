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
#include <string>

#include "act/analysis.hpp"
#include "act/domain.hpp"
#include "act/selector.hpp"
#include "act/simulator.hpp"

// File formats. Corpora and pair datasets are JSON-lines record files with a
// header record carrying the metric schema; formulas, configs, and reports
// are single JSON documents. Numbers serialize with full round-trip
// precision.

namespace act {

// 64-bit FNV-1a as a lowercase hex string; stable across platforms.
std::string fnv1a64_hex(std::string_view bytes);
std::string hash_file(const std::filesystem::path& path);

void write_corpus(const Corpus& corpus, const std::filesystem::path& path,
                  const std::string& config_hash = "");
Corpus read_corpus(const std::filesystem::path& path);

void write_pair_dataset(const PairDataset& dataset,
                        const std::filesystem::path& path,
                        const std::string& config_hash = "");

// Parses a pair dataset file without validating its content. Raises
// ErrorCode::kIo for a missing file, kEmptyInput for an empty one, and
// ParseError (with the 1-based line) for malformed or header-inconsistent
// records.
PairDataset read_pair_dataset(const std::filesystem::path& path);

// GuardrailConfig as JSON:
//   {"thresholds": [...], "groups": [[0], [1, 2]],
//    "grids": {"0": {"min": 0, "max": 1, "step": 0.1}, ...}}
GuardrailConfig guardrail_config_from_json(const std::string& json_text);
std::string guardrail_config_to_json(const GuardrailConfig& config);

SimCorpusConfig sim_corpus_config_from_json(const std::string& json_text);

std::string selection_to_json(const SelectionResult& result,
                              const std::vector<std::string>& metric_names);

std::string correlation_report_to_json(const CorrelationReport& report);
std::string correlation_report_to_tsv(const CorrelationReport& report);

std::string experiment_report_to_json(const GuardrailExperimentReport& report,
                                      const std::vector<std::string>& metric_names);
std::string experiment_report_to_tsv(const GuardrailExperimentReport& report,
                                     const std::vector<std::string>& metric_names);

std::string utc_timestamp_now();

}  // namespace act
