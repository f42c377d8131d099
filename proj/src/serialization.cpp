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

#include "act/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "time_util.hpp"

namespace act {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
  out << text;
}

json parse_record(const std::string& line, std::size_t line_number) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_number) + ": " + e.what(),
                     line_number);
  }
}

json item_to_json(const Item& item) {
  return json{{"item_id", item.item_id},
              {"base_score", item.base_score},
              {"terms", item.terms},
              {"labels", item.labels}};
}

Item item_from_json(const json& j, std::size_t n_metrics,
                    std::size_t line_number) {
  Item item;
  item.item_id = j.at("item_id").get<std::string>();
  item.base_score = j.at("base_score").get<double>();
  item.terms = j.at("terms").get<std::vector<double>>();
  item.labels = j.at("labels").get<std::vector<double>>();
  if (item.terms.size() != n_metrics || item.labels.size() != n_metrics) {
    throw ParseError("line " + std::to_string(line_number) + ": item '" +
                         item.item_id + "' does not match header n_metrics=" +
                         std::to_string(n_metrics),
                     line_number);
  }
  return item;
}

// Shared driver for line-delimited record files: checks the header kind,
// then hands each record line to `on_record`.
template <typename OnHeader, typename OnRecord>
void read_record_file(const std::filesystem::path& path,
                      const std::string& header_kind,
                      const std::string& record_kind, OnHeader on_header,
                      OnRecord on_record) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kIo, "no such file: " + path.string());
  }
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }

  std::string line;
  std::size_t line_number = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const json record = parse_record(line, line_number);
    const std::string kind = record.value("kind", "");
    if (!saw_header) {
      if (kind != header_kind) {
        throw ParseError("line " + std::to_string(line_number) +
                             ": expected header kind '" + header_kind +
                             "', got '" + kind + "'",
                         line_number);
      }
      try {
        on_header(record);
      } catch (const json::exception& e) {
        throw ParseError(
            "line " + std::to_string(line_number) + ": " + e.what(),
            line_number);
      }
      saw_header = true;
      continue;
    }
    if (kind != record_kind) {
      throw ParseError("line " + std::to_string(line_number) +
                           ": expected record kind '" + record_kind +
                           "', got '" + kind + "'",
                       line_number);
    }
    try {
      on_record(record, line_number);
    } catch (const json::exception& e) {
      throw ParseError("line " + std::to_string(line_number) + ": " + e.what(),
                       line_number);
    }
  }
  if (!saw_header) {
    throw Error(ErrorCode::kEmptyInput, "empty record file: " + path.string());
  }
}

json ci_to_json(const ConfidenceInterval& ci) {
  return json{{"low", ci.low}, {"high", ci.high}};
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

std::string hash_file(const std::filesystem::path& path) {
  return fnv1a64_hex(read_file(path));
}

std::string utc_timestamp_now() { return internal::utc_now_string(); }

void write_corpus(const Corpus& corpus, const std::filesystem::path& path,
                  const std::string& config_hash) {
  std::ostringstream out;
  out << json{{"kind", "corpus_header"},
              {"version", 1},
              {"n_metrics", corpus.metric_names.size()},
              {"metric_names", corpus.metric_names},
              {"item_count", corpus.items.size()},
              {"config_hash", config_hash}}
             .dump()
      << "\n";
  for (const Item& item : corpus.items) {
    json record = item_to_json(item);
    record["kind"] = "item";
    out << record.dump() << "\n";
  }
  write_file(path, out.str());
}

Corpus read_corpus(const std::filesystem::path& path) {
  Corpus corpus;
  std::size_t n_metrics = 0;
  read_record_file(
      path, "corpus_header", "item",
      [&](const json& header) {
        n_metrics = header.at("n_metrics").get<std::size_t>();
        corpus.metric_names =
            header.at("metric_names").get<std::vector<std::string>>();
        if (corpus.metric_names.size() != n_metrics) {
          throw ParseError("corpus header: metric_names does not match "
                           "n_metrics", 1);
        }
      },
      [&](const json& record, std::size_t line_number) {
        corpus.items.push_back(item_from_json(record, n_metrics, line_number));
      });
  return corpus;
}

void write_pair_dataset(const PairDataset& dataset,
                        const std::filesystem::path& path,
                        const std::string& config_hash) {
  std::ostringstream out;
  out << json{{"kind", "pair_dataset_header"},
              {"version", 1},
              {"n_metrics", dataset.n_metrics},
              {"metric_names", dataset.metric_names},
              {"treatment_id", dataset.treatment_id},
              {"pair_count", dataset.pairs.size()},
              {"config_hash", config_hash}}
             .dump()
      << "\n";
  for (const RandomPair& pair : dataset.pairs) {
    out << json{{"kind", "pair"},
                {"pair_id", pair.pair_id},
                {"item_a", item_to_json(pair.item_a)},
                {"item_b", item_to_json(pair.item_b)}}
               .dump()
        << "\n";
  }
  write_file(path, out.str());
}

PairDataset read_pair_dataset(const std::filesystem::path& path) {
  PairDataset dataset;
  read_record_file(
      path, "pair_dataset_header", "pair",
      [&](const json& header) {
        dataset.n_metrics = header.at("n_metrics").get<std::size_t>();
        dataset.metric_names =
            header.at("metric_names").get<std::vector<std::string>>();
        dataset.treatment_id = header.at("treatment_id").get<std::string>();
      },
      [&](const json& record, std::size_t line_number) {
        RandomPair pair;
        pair.pair_id = record.at("pair_id").get<std::string>();
        pair.item_a =
            item_from_json(record.at("item_a"), dataset.n_metrics, line_number);
        pair.item_b =
            item_from_json(record.at("item_b"), dataset.n_metrics, line_number);
        dataset.pairs.push_back(std::move(pair));
      });
  return dataset;
}

GuardrailConfig guardrail_config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("guardrail config: " + std::string(e.what()), e.byte);
  }
  try {
    GuardrailConfig config;
    config.thresholds = j.at("thresholds").get<std::vector<double>>();
    config.partition =
        j.at("groups").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& [key, spec] : j.at("grids").items()) {
      GridSpec grid;
      grid.min = spec.at("min").get<double>();
      grid.max = spec.at("max").get<double>();
      grid.step = spec.at("step").get<double>();
      config.grids[static_cast<std::size_t>(std::stoull(key))] = grid;
    }
    return config;
  } catch (const json::exception& e) {
    throw ParseError("guardrail config: " + std::string(e.what()), 0);
  }
}

std::string guardrail_config_to_json(const GuardrailConfig& config) {
  json grids = json::object();
  for (const auto& [index, spec] : config.grids) {
    grids[std::to_string(index)] = {
        {"min", spec.min}, {"max", spec.max}, {"step", spec.step}};
  }
  return json{{"thresholds", config.thresholds},
              {"groups", config.partition},
              {"grids", grids}}
      .dump(2);
}

SimCorpusConfig sim_corpus_config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("corpus config: " + std::string(e.what()), e.byte);
  }
  try {
    SimCorpusConfig config;
    config.item_count = j.at("item_count").get<std::size_t>();
    config.base_mean = j.value("base_mean", 0.0);
    config.base_spread = j.value("base_spread", 1.0);
    config.base_quality_coef = j.value("base_quality_coef", 0.0);
    // No "seed" field here: the run seed is passed in from outside so one
    // flag drives all randomness.
    for (const auto& m : j.at("metrics")) {
      MetricModel metric;
      metric.name = m.value("name", "");
      metric.term_mean = m.value("term_mean", 0.0);
      metric.term_spread = m.value("term_spread", 1.0);
      metric.label_bias = m.value("label_bias", 0.0);
      metric.label_term_coef = m.value("label_term_coef", 0.0);
      metric.label_quality_coef = m.value("label_quality_coef", 0.0);
      const std::string model = m.value("label_model", "logistic");
      if (model == "logistic") {
        metric.label_model = LabelModel::kLogistic;
      } else if (model == "threshold") {
        metric.label_model = LabelModel::kThreshold;
      } else {
        throw Error(ErrorCode::kConfig,
                    "unknown label_model '" + model + "'");
      }
      config.metrics.push_back(std::move(metric));
    }
    return config;
  } catch (const json::exception& e) {
    throw ParseError("corpus config: " + std::string(e.what()), 0);
  }
}

std::string selection_to_json(const SelectionResult& result,
                              const std::vector<std::string>& metric_names) {
  json groups = json::array();
  for (const GroupSelection& group : result.per_group) {
    std::size_t valid_count = 0;
    for (bool v : group.valid) valid_count += v ? 1 : 0;
    json margins = json::array();
    for (const MetricMargin& margin : group.best_margins) {
      margins.push_back({{"metric", margin.metric},
                         {"best_estimate", margin.best_estimate},
                         {"threshold", margin.threshold}});
    }
    groups.push_back({{"indices", group.indices},
                      {"grid_size", group.grid.size()},
                      {"valid_count", valid_count},
                      {"feasible", group.feasible},
                      {"chosen", group.chosen},
                      {"best_margins", margins}});
  }
  return json{{"kind", "selection"},
              {"feasible", result.feasible},
              {"weights", result.weights.weights},
              {"metric_names", metric_names},
              {"achieved", result.achieved.values},
              {"violated_metrics", result.violated_metrics},
              {"groups", groups}}
      .dump(2);
}

std::string correlation_report_to_json(const CorrelationReport& report) {
  json rows = json::array();
  for (const CorrelationRow& row : report.rows) {
    rows.push_back({{"variant_id", row.variant_id},
                    {"offline_delta", row.offline_delta},
                    {"online_delta", row.online_delta}});
  }
  return json{{"kind", "correlation_report"},
              {"metric_index", report.metric_index},
              {"pearson_r", report.pearson_r},
              {"sample_count", report.sample_count},
              {"warnings", report.warnings},
              {"rows", rows}}
      .dump(2);
}

std::string correlation_report_to_tsv(const CorrelationReport& report) {
  std::ostringstream out;
  out << "variant_id\toffline_delta\tonline_delta\n";
  out.precision(17);
  for (const CorrelationRow& row : report.rows) {
    out << row.variant_id << "\t" << row.offline_delta << "\t"
        << row.online_delta << "\n";
  }
  return out.str();
}

std::string experiment_report_to_json(
    const GuardrailExperimentReport& report,
    const std::vector<std::string>& metric_names) {
  json arms = json::array();
  for (const ArmReport& arm : report.arms) {
    json cis = json::array();
    for (const ConfidenceInterval& ci : arm.delta_ci) {
      cis.push_back(ci_to_json(ci));
    }
    arms.push_back({{"variant", arm.variant},
                    {"method", arm.method},
                    {"is_baseline", arm.is_baseline},
                    {"feasible", arm.feasible},
                    {"weights_used", arm.weights_used.weights},
                    {"online_values", arm.online_values},
                    {"delta", arm.delta},
                    {"delta_ci", cis}});
  }
  return json{{"kind", "guardrail_experiment_report"},
              {"metric_names", metric_names},
              {"decrease_metric", report.decrease_metric},
              {"thresholds_used", report.thresholds_used},
              {"arms", arms}}
      .dump(2);
}

std::string experiment_report_to_tsv(
    const GuardrailExperimentReport& report,
    const std::vector<std::string>& metric_names) {
  std::ostringstream out;
  out << "variant\tmethod";
  for (const std::string& name : metric_names) {
    out << "\tdelta_" << name << "\tci_low_" << name << "\tci_high_" << name;
  }
  out << "\n";
  out.precision(17);
  for (const ArmReport& arm : report.arms) {
    out << arm.variant << "\t" << arm.method;
    for (std::size_t metric = 0; metric < metric_names.size(); ++metric) {
      out << "\t" << arm.delta[metric] << "\t" << arm.delta_ci[metric].low
          << "\t" << arm.delta_ci[metric].high;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace act
