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

// act — constraint-targeting toolkit for multi-objective ranking.
//
// Subcommands: simulate, select, oracle, validate, pipeline, experiment,
// correlate. Every subcommand reads one JSON config (--config); --seed
// overrides the config's seed and is the single source of randomness.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "act/analysis.hpp"
#include "act/pipeline.hpp"
#include "act/serialization.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kOk = act::kExitOk;
constexpr int kError = act::kExitError;
constexpr int kInfeasible = act::kExitInfeasible;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "text";
};

std::string read_file_or_die(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw act::Error(act::ErrorCode::kIo, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw act::Error(act::ErrorCode::kIo, "cannot write " + path.string());
  }
  out << text;
}

json parse_config(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw act::ParseError("config: " + std::string(e.what()), e.byte);
  }
}

std::uint64_t run_seed(const CommonArgs& args, const json& config) {
  if (args.seed) return *args.seed;
  return config.value("seed", std::uint64_t{0});
}

bool json_output(const CommonArgs& args) { return args.format == "json-lines"; }

act::SimCorpusConfig corpus_config(const json& config, std::uint64_t seed) {
  act::SimCorpusConfig corpus =
      act::sim_corpus_config_from_json(config.at("corpus").dump());
  corpus.seed = act::derive_seed(seed, 0);
  return corpus;
}

int cmd_simulate(const CommonArgs& args) {
  const json config = parse_config(read_file_or_die(args.config_path));
  const std::uint64_t seed = run_seed(args, config);
  const std::string config_hash =
      act::fnv1a64_hex(read_file_or_die(args.config_path));
  const fs::path out_dir = args.out_dir.empty() ? "." : args.out_dir;
  fs::create_directories(out_dir);

  const act::Corpus corpus = act::generate_corpus(corpus_config(config, seed));
  for (const std::string& warning : corpus.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  act::write_corpus(corpus, out_dir / "corpus.jsonl", config_hash);

  const auto pair_count = config.at("pair_count").get<std::size_t>();
  const std::string treatment = config.value("treatment_id", "prod");
  const act::PairDataset pairs = act::log_random_pairs(
      corpus, pair_count, act::derive_seed(seed, 1), treatment);
  act::write_pair_dataset(pairs, out_dir / ("pairs_" + treatment + ".jsonl"),
                          config_hash);
  std::cout << "wrote corpus.jsonl (" << corpus.items.size() << " items), "
            << "pairs_" << treatment << ".jsonl (" << pairs.pairs.size()
            << " pairs)\n";

  if (config.contains("decrease")) {
    const auto& d = config.at("decrease");
    const act::Corpus variant = act::make_decrease_variant(
        corpus, d.at("metric_index").get<std::size_t>(),
        d.at("magnitude").get<double>(), act::derive_seed(seed, 2));
    act::write_corpus(variant, out_dir / "corpus_decrease.jsonl", config_hash);
    const act::PairDataset variant_pairs = act::log_random_pairs(
        variant, pair_count, act::derive_seed(seed, 3),
        treatment + "_decrease");
    act::write_pair_dataset(
        variant_pairs, out_dir / ("pairs_" + treatment + "_decrease.jsonl"),
        config_hash);
    std::cout << "wrote corpus_decrease.jsonl, pairs_" << treatment
              << "_decrease.jsonl\n";
  }
  return kOk;
}

void print_selection(const act::SelectionResult& result,
                     const std::vector<std::string>& metric_names,
                     const CommonArgs& args) {
  if (json_output(args)) {
    std::cout << act::selection_to_json(result, metric_names) << "\n";
    return;
  }
  std::cout << (result.feasible ? "feasible" : "INFEASIBLE") << "\n";
  for (std::size_t i = 0; i < metric_names.size(); ++i) {
    std::printf("  %-16s w=%-10.6g estimate=%.6f\n", metric_names[i].c_str(),
                result.weights[i], result.achieved.values[i]);
  }
  for (const act::GroupSelection& group : result.per_group) {
    std::size_t valid = 0;
    for (bool v : group.valid) valid += v ? 1 : 0;
    std::cout << "  group " << json(group.indices).dump() << ": "
              << group.grid.size() << " candidates, " << valid << " valid"
              << (group.feasible ? "" : " (infeasible)") << "\n";
  }
}

int cmd_select(const CommonArgs& args, bool oracle) {
  const json config = parse_config(read_file_or_die(args.config_path));
  const fs::path config_dir = fs::path(args.config_path).parent_path();
  fs::path dataset_path = config.at("dataset").get<std::string>();
  if (!dataset_path.is_absolute()) dataset_path = config_dir / dataset_path;

  const act::PairDataset dataset = act::ingest_dataset(dataset_path);
  const act::GuardrailConfig guardrails =
      act::guardrail_config_from_json(config.at("guardrails").dump());

  act::SelectionResult result;
  if (oracle) {
    act::BruteForceOptions options;
    options.max_grid_points =
        config.value("max_grid_points", options.max_grid_points);
    result = act::joint_brute_force(dataset, guardrails, options);
  } else {
    act::SelectorOptions options;
    options.passes = config.value("passes", 1);
    result = act::act_select(dataset, guardrails, options);
  }

  print_selection(result, dataset.metric_names, args);
  if (!args.out_dir.empty()) {
    write_text(fs::path(args.out_dir) / "selection.json",
               act::selection_to_json(result, dataset.metric_names) + "\n");
  }
  return result.feasible ? kOk : kInfeasible;
}

int cmd_validate(const CommonArgs& args) {
  const json config = parse_config(read_file_or_die(args.config_path));
  const fs::path config_dir = fs::path(args.config_path).parent_path();
  fs::path dataset_path = config.at("dataset").get<std::string>();
  if (!dataset_path.is_absolute()) dataset_path = config_dir / dataset_path;

  const act::PairDataset dataset = act::read_pair_dataset(dataset_path);
  const act::ValidationReport report = act::validate_dataset(dataset);
  if (report.ok) {
    std::cout << "ok: " << dataset.pairs.size() << " pairs, "
              << dataset.n_metrics << " metrics\n";
    return kOk;
  }
  for (const act::Violation& v : report.violations) {
    if (json_output(args)) {
      std::cout << json{{"pair_id", v.pair_id},
                        {"field", v.field},
                        {"message", v.message}}
                       .dump()
                << "\n";
    } else {
      std::cout << "violation: pair '" << v.pair_id << "' " << v.field << ": "
                << v.message << "\n";
    }
  }
  return kError;
}

int cmd_pipeline(const CommonArgs& args) {
  const std::string config_text = read_file_or_die(args.config_path);
  act::RunConfig config = act::run_config_from_json(
      config_text, fs::path(args.config_path).parent_path());
  config.config_hash = act::fnv1a64_hex(config_text);
  if (args.seed) config.seed = *args.seed;
  config.out_dir = args.out_dir.empty() ? "." : args.out_dir;

  const act::RunReport report = act::run_pipeline(config);
  for (const act::TreatmentResult& t : report.treatments) {
    std::cout << t.treatment_id << ": " << t.status;
    if (!t.export_path.empty()) std::cout << " -> " << t.export_path.string();
    if (!t.message.empty()) std::cout << " (" << t.message << ")";
    std::cout << "\n";
  }
  std::cout << "manifest: " << report.manifest_path.string() << "\n";
  return report.exit_code;
}

int cmd_experiment(const CommonArgs& args) {
  const json config = parse_config(read_file_or_die(args.config_path));
  const std::uint64_t seed = run_seed(args, config);

  const act::Corpus corpus = act::generate_corpus(corpus_config(config, seed));
  const act::WeightVector fixed_w(
      config.at("fixed_weights").get<std::vector<double>>());
  const act::GuardrailConfig guardrails =
      act::guardrail_config_from_json(config.at("guardrails").dump());

  const auto& e = config.at("experiment");
  act::ExperimentConfig experiment;
  experiment.decrease_metric = e.at("metric_index").get<std::size_t>();
  experiment.decrease_magnitude = e.at("magnitude").get<double>();
  experiment.pair_count = e.at("pair_count").get<std::size_t>();
  experiment.impressions = e.at("impressions").get<std::size_t>();
  experiment.resamples = e.value("resamples", std::size_t{300});
  experiment.confidence = e.value("confidence", 0.95);
  experiment.thresholds_are_offsets = e.value("thresholds_are_offsets", false);
  experiment.seed = act::derive_seed(seed, 10);

  const act::GuardrailExperimentReport report =
      act::guardrail_experiment(corpus, experiment, fixed_w, guardrails);

  if (json_output(args)) {
    std::cout << act::experiment_report_to_json(report, corpus.metric_names)
              << "\n";
  } else {
    std::cout << act::experiment_report_to_tsv(report, corpus.metric_names);
  }
  if (!args.out_dir.empty()) {
    write_text(fs::path(args.out_dir) / "experiment_report.json",
               act::experiment_report_to_json(report, corpus.metric_names) +
                   "\n");
    write_text(fs::path(args.out_dir) / "experiment_arms.tsv",
               act::experiment_report_to_tsv(report, corpus.metric_names));
  }
  for (const act::ArmReport& arm : report.arms) {
    if (!arm.feasible) return kInfeasible;
  }
  return kOk;
}

int cmd_correlate(const CommonArgs& args) {
  const json config = parse_config(read_file_or_die(args.config_path));
  const std::uint64_t seed = run_seed(args, config);

  const act::Corpus corpus = act::generate_corpus(corpus_config(config, seed));

  std::vector<act::WeightVector> variants;
  if (config.contains("variants")) {
    for (const auto& v : config.at("variants")) {
      variants.emplace_back(v.get<std::vector<double>>());
    }
  } else {
    const auto& sweep = config.at("sweep");
    variants = act::make_variant_sweep(
        corpus.metric_names.size(), sweep.value("per_axis", std::size_t{10}),
        sweep.value("random_count", std::size_t{10}),
        sweep.value("w_max", 2.0), act::derive_seed(seed, 20));
  }

  act::CorrelationStudyConfig study;
  study.pair_count = config.at("pair_count").get<std::size_t>();
  study.impressions = config.at("impressions").get<std::size_t>();
  study.metric_index = config.value("metric_index", std::size_t{0});
  study.seed = act::derive_seed(seed, 21);

  const act::CorrelationReport report =
      act::correlation_study(corpus, variants, study);
  for (const std::string& warning : report.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }

  if (json_output(args)) {
    std::cout << act::correlation_report_to_json(report) << "\n";
  } else {
    std::printf("pearson_r=%.4f over %zu variants (metric %zu)\n",
                report.pearson_r, report.sample_count, report.metric_index);
  }
  if (!args.out_dir.empty()) {
    write_text(fs::path(args.out_dir) / "correlation_report.json",
               act::correlation_report_to_json(report) + "\n");
    write_text(fs::path(args.out_dir) / "correlation_rows.tsv",
               act::correlation_report_to_tsv(report));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constraint-targeting toolkit for multi-objective ranking"};
  app.require_subcommand(1);

  CommonArgs args;
  const auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", args.config_path,
                                "path to the JSON config for this subcommand");
    if (needs_config) opt->required();
    cmd->add_option("--seed", args.seed,
                    "override the config seed (single randomness source)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--format", args.format, "text | json-lines")
        ->check(CLI::IsMember({"text", "json-lines"}));
  };

  auto* simulate = app.add_subcommand(
      "simulate", "generate a synthetic corpus and log random pairs");
  auto* select = app.add_subcommand(
      "select", "grouped guardrail weight selection on a pair dataset");
  auto* oracle = app.add_subcommand(
      "oracle", "exhaustive joint grid search (reference method)");
  auto* validate =
      app.add_subcommand("validate", "lint a pair dataset file");
  auto* pipeline = app.add_subcommand(
      "pipeline", "multi-treatment tick: ingest, select, export formulas");
  auto* experiment = app.add_subcommand(
      "experiment", "2x2 decrease-variant guardrail enforcement study");
  auto* correlate = app.add_subcommand(
      "correlate", "offline-vs-online predictiveness study");
  for (CLI::App* cmd :
       {simulate, select, oracle, validate, pipeline, experiment, correlate}) {
    add_common(cmd);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(args);
    if (select->parsed()) return cmd_select(args, /*oracle=*/false);
    if (oracle->parsed()) return cmd_select(args, /*oracle=*/true);
    if (validate->parsed()) return cmd_validate(args);
    if (pipeline->parsed()) return cmd_pipeline(args);
    if (experiment->parsed()) return cmd_experiment(args);
    if (correlate->parsed()) return cmd_correlate(args);
  } catch (const act::Error& e) {
    std::cerr << "error (" << act::error_code_name(e.code()) << "): "
              << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
