// Copyright 2026 The Xfer Authors.
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
// train, eval, refine and bench subcommands.

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>

#include "cli/cli.h"
#include "cli/common.h"
#include "xfer/coach/descriptions.h"
#include "xfer/coach/model.h"
#include "xfer/common/error.h"
#include "xfer/common/strings.h"
#include "xfer/embed_align/embeddings.h"
#include "xfer/embed_align/procrustes.h"
#include "xfer/harness/datasets.h"
#include "xfer/harness/latency.h"
#include "xfer/harness/report.h"
#include "xfer/parse_repr/codec.h"
#include "xfer/parse_repr/jsonl.h"
#include "xfer/x2parser/model.h"
#include "xfer/xling_reg/tagger.h"

namespace xfer::cli {

namespace {

std::optional<embed_align::EmbeddingTable> MaybeLoadEmbeddings(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return embed_align::EmbeddingTable::Load(path);
}

std::vector<harness::TaggedSequence> PredictAll(
    const std::vector<harness::TaggedSequence>& gold,
    const std::function<harness::TaggedSequence(const std::vector<std::string>&)>& predict) {
  std::vector<harness::TaggedSequence> predicted;
  for (const harness::TaggedSequence& sequence : gold) predicted.push_back(predict(sequence.tokens));
  return predicted;
}

// ---------------------------------------------------------------- train

struct TrainOptions {
  CommonOptions common;
  std::string kind;
  std::string train;
  std::string out;
  std::string descriptions;
  std::string embeddings;
};

void RunTrain(const TrainOptions& options, std::ostream& out) {
  const KeyValueConfig config = ResolveConfig(options.common);
  Json report{{"command", "train"}, {"model", options.kind}};
  if (options.kind == "x2parser") {
    const auto trees = harness::LoadParseJsonl(options.train);
    const x2parser::X2Config x2 = x2parser::X2Config::FromConfig(config);
    x2parser::X2Parser parser = x2parser::X2Parser::Build(x2, trees);
    const x2parser::X2TrainLog log = x2parser::TrainX2Parser(parser, trees);
    parser.Save(options.out);
    const double em = 100.0 * x2parser::ExactMatch(parser, trees);
    report["examples"] = trees.size();
    report["steps"] = log.step_loss.size();
    report["final_loss"] = log.step_loss.empty() ? 0.0 : log.step_loss.back();
    report["train_exact_match"] = em;
    report["loss"] = log.step_loss;
    out << "trained x2parser on " << trees.size() << " trees for " << log.step_loss.size()
        << " steps; train exact match " << FormatDouble(em) << "\n";
  } else if (options.kind == "tagger") {
    const auto data = harness::LoadConll(options.train);
    const auto embeddings = MaybeLoadEmbeddings(options.embeddings);
    xling_reg::TaggerModel model = xling_reg::TaggerModel::Build(
        xling_reg::TaggerConfig::FromConfig(config), data, embeddings ? &*embeddings : nullptr);
    const xling_reg::TaggerTrainLog log = xling_reg::TrainTagger(model, data);
    model.Save(options.out);
    const auto predicted =
        PredictAll(data, [&](const std::vector<std::string>& t) { return model.Predict(t); });
    const harness::BioScores scores = harness::BioF1(data, predicted);
    report["examples"] = data.size();
    report["epoch_loss"] = log.epoch_loss;
    report["pretrain_label_reg"] = log.pretrain_label_reg;
    report["train_f1"] = scores.f1;
    out << "trained tagger on " << data.size() << " sequences; train F1 "
        << FormatDouble(scores.f1) << "\n";
  } else {
    Require(!options.descriptions.empty(), ErrorCode::kInvalidArgument,
            "coach training needs --descriptions");
    const auto data = harness::LoadConll(options.train);
    const auto descriptions = coach::LoadSlotDescriptions(options.descriptions);
    const auto embeddings = MaybeLoadEmbeddings(options.embeddings);
    coach::CoachModel model =
        coach::CoachModel::Build(coach::CoachConfig::FromConfig(config), data, descriptions,
                                 embeddings ? &*embeddings : nullptr);
    const coach::CoachTrainLog log = coach::TrainCoach(model, data);
    model.Save(options.out);
    const auto predicted =
        PredictAll(data, [&](const std::vector<std::string>& t) { return model.Predict(t); });
    const harness::BioScores scores = harness::BioF1(data, predicted);
    report["examples"] = data.size();
    report["epoch_loss"] = log.epoch_loss;
    report["train_f1"] = scores.f1;
    out << "trained coach on " << data.size() << " sequences; train F1 "
        << FormatDouble(scores.f1) << "\n";
  }
  WriteReport(options.common, report);
}

// ---------------------------------------------------------------- eval

struct EvalOptions {
  CommonOptions common;
  std::string gold;
  std::string pred;
  std::string model;
  std::string kind = "auto";
  std::string format = "auto";
  std::string pred_out;
};

std::string DetectModelKind(const std::string& directory) {
  const std::filesystem::path dir(directory);
  Require(std::filesystem::is_directory(dir), ErrorCode::kMissingResource,
          "no model directory at " + directory);
  if (std::filesystem::exists(dir / "slots.txt")) return "x2parser";
  if (std::filesystem::exists(dir / "descriptions.tsv")) return "coach";
  return "tagger";
}

std::vector<parse_repr::FlatLabels> LoadPredictedFlat(const std::string& path,
                                                      const std::vector<parse_repr::ParseTree>& gold) {
  std::vector<parse_repr::FlatLabels> flat;
  const std::vector<std::string> lines = parse_repr::ReadJsonLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string where = path + ": record " + std::to_string(i + 1);
    if (lines[i].find("\"parse\"") != std::string::npos) {
      flat.push_back(parse_repr::EncodeFlat(parse_repr::TreeFromJson(lines[i], where)));
    } else {
      flat.push_back(parse_repr::FlatFromJson(lines[i], where).labels);
    }
  }
  Require(flat.size() == gold.size(), ErrorCode::kShapeMismatch,
          "gold has " + std::to_string(gold.size()) + " records, predictions " +
              std::to_string(flat.size()));
  return flat;
}

void RunEval(const EvalOptions& options, std::ostream& out) {
  ResolveConfig(options.common);  // validates the config and XFER_SEED
  Require(options.pred.empty() != options.model.empty(), ErrorCode::kInvalidArgument,
          "give exactly one of --pred and --model");
  const std::string kind =
      options.model.empty() ? "" : (options.kind == "auto" ? DetectModelKind(options.model)
                                                           : options.kind);
  std::string format = options.format;
  if (format == "auto") {
    if (!kind.empty()) {
      format = kind == "x2parser" ? "parse-jsonl" : "conll";
    } else {
      format = EndsWith(options.gold, ".jsonl") ? "parse-jsonl" : "conll";
    }
  }
  harness::EvalReport report;
  if (format == "parse-jsonl") {
    Require(kind.empty() || kind == "x2parser", ErrorCode::kInvalidArgument,
            "parse evaluation needs an x2parser model");
    const auto gold = harness::LoadParseJsonl(options.gold);
    std::vector<parse_repr::FlatLabels> predicted;
    int repairs = 0;
    if (!options.model.empty()) {
      const x2parser::X2Parser parser = x2parser::X2Parser::Load(options.model);
      std::vector<std::string> records;
      for (const parse_repr::ParseTree& tree : gold) {
        x2parser::ParseResult result = parser.Parse(tree.tokens);
        repairs += result.repairs;
        records.push_back(parse_repr::FlatToJson({tree.tokens, result.flat}));
        predicted.push_back(std::move(result.flat));
      }
      if (!options.pred_out.empty()) parse_repr::WriteLines(options.pred_out, records);
    } else {
      predicted = LoadPredictedFlat(options.pred, gold);
    }
    report = harness::ParseReport(gold, std::span<const parse_repr::FlatLabels>(predicted));
    report.repairs = repairs;
  } else {
    Require(kind != "x2parser", ErrorCode::kInvalidArgument,
            "tagging evaluation needs a tagger or coach model");
    const auto gold = harness::LoadConll(options.gold);
    std::vector<harness::TaggedSequence> predicted;
    if (kind == "tagger") {
      const auto model = xling_reg::TaggerModel::Load(options.model);
      predicted =
          PredictAll(gold, [&](const std::vector<std::string>& t) { return model.Predict(t); });
    } else if (kind == "coach") {
      const auto model = coach::CoachModel::Load(options.model);
      predicted =
          PredictAll(gold, [&](const std::vector<std::string>& t) { return model.Predict(t); });
    } else {
      predicted = harness::LoadConll(options.pred);
    }
    if (!options.pred_out.empty()) harness::SaveConll(predicted, options.pred_out);
    report = harness::TaggingReport(gold, predicted);
  }
  out << harness::ReportToText(report);
  if (!options.common.report_path.empty()) {
    WriteTextFile(options.common.report_path, harness::ReportToJson(report));
  }
}

// ---------------------------------------------------------------- refine

struct RefineOptions {
  CommonOptions common;
  std::string source;
  std::string target;
  std::string dictionary;
  std::string language;
  std::string out;
  std::string mapping_out;
  double threshold = embed_align::kDefaultRefineThreshold;
  int iterations = 5;
  bool no_preprocess = false;
};

void RunRefine(const RefineOptions& options, std::ostream& out) {
  ResolveConfig(options.common);
  Require(options.dictionary.empty() != options.language.empty(), ErrorCode::kInvalidArgument,
          "give exactly one of --dict and --lang");
  embed_align::EmbeddingTable source = embed_align::EmbeddingTable::Load(options.source);
  embed_align::EmbeddingTable target = embed_align::EmbeddingTable::Load(options.target);
  Require(source.dim() == target.dim(), ErrorCode::kShapeMismatch,
          "source and target embeddings differ in dimension");
  if (!options.no_preprocess) {
    source = embed_align::Preprocess(source);
    target = embed_align::Preprocess(target);
  }
  const embed_align::SeedDictionary dictionary =
      options.dictionary.empty() ? embed_align::DefaultSeedDictionary(options.language)
                                 : harness::LoadDictTsv(options.dictionary);
  int skipped = 0;
  const embed_align::AlignmentProblem problem =
      embed_align::MakeProblem(source, target, dictionary, &skipped);
  Require(!problem.pairs.empty(), ErrorCode::kInvalidArgument,
          "no dictionary pair is covered by both embedding tables");
  const embed_align::RefineResult result =
      embed_align::Refine(problem, options.threshold, options.iterations);
  embed_align::EmbeddingTable mapped(source.words(), source.vectors() * result.mapping);
  mapped.Save(options.out);
  if (!options.mapping_out.empty()) {
    std::vector<std::string> rows;
    for (Eigen::Index r = 0; r < result.mapping.rows(); ++r) {
      std::vector<std::string> values;
      for (Eigen::Index c = 0; c < result.mapping.cols(); ++c) {
        values.push_back(FormatDouble(result.mapping(r, c)));
      }
      rows.push_back(Join(values, " "));
    }
    parse_repr::WriteLines(options.mapping_out, rows);
  }
  out << "aligned " << problem.pairs.size() << " pairs (" << skipped << " skipped) in "
      << result.iterations << " iterations; mean cosine distance "
      << FormatDouble(result.mean_distance.empty() ? 0.0 : result.mean_distance.back()) << "\n";
  WriteReport(options.common,
              Json{{"command", "refine"},
                   {"pairs", problem.pairs.size()},
                   {"skipped", skipped},
                   {"iterations", result.iterations},
                   {"converged", result.converged},
                   {"objective", result.objective},
                   {"mean_distance", result.mean_distance},
                   {"orthogonality_error", embed_align::OrthogonalityError(result.mapping)}});
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  CommonOptions common;
  std::string model;
  std::string train;
  std::vector<int> buckets = harness::kLatencyBuckets;
  int repeats = 30;
  int warmup = 10;
  bool include_timings = false;
};

void RunBench(const BenchOptions& options, std::ostream& out) {
  const KeyValueConfig config = ResolveConfig(options.common);
  Require(options.model.empty() != options.train.empty(), ErrorCode::kInvalidArgument,
          "give exactly one of --model and --train");
  std::optional<x2parser::X2Parser> parser;
  if (!options.model.empty()) {
    parser.emplace(x2parser::X2Parser::Load(options.model));
  } else {
    // Randomly initialized parser over the vocabulary of --train.
    parser.emplace(x2parser::X2Parser::Build(x2parser::X2Config::FromConfig(config),
                                             harness::LoadParseJsonl(options.train)));
  }
  harness::LatencyOptions latency;
  latency.buckets = options.buckets;
  latency.repeats = options.repeats;
  latency.warmup = options.warmup;
  latency.seed = ResolveSeed(config, latency.seed);
  harness::EvalReport report;
  report.latency = harness::BenchLatency(*parser, latency);
  out << harness::ReportToText(report);
  if (!options.include_timings) {
    // Wall-clock medians vary between runs; the default report keeps only
    // the reproducible structure (lengths and pass counts).
    for (harness::LatencyRow& row : report.latency) row.median_ms = 0.0;
  }
  if (!options.common.report_path.empty()) {
    WriteTextFile(options.common.report_path, harness::ReportToJson(report));
  }
}

}  // namespace

CLI::App* AddTrainCommand(CLI::App& app, std::ostream& out, int* status) {
  auto options = std::make_shared<TrainOptions>();
  CLI::App* command = app.add_subcommand("train", "Train a model");
  AddCommonOptions(*command, options->common);
  command->add_option("model", options->kind, "x2parser | coach | tagger")
      ->required()
      ->check(CLI::IsMember({"x2parser", "coach", "tagger"}));
  command->add_option("--train", options->train,
                      "Training data (parse JSONL for x2parser, CoNLL otherwise)")
      ->required();
  command->add_option("--out", options->out, "Model directory to write")->required();
  command->add_option("--descriptions", options->descriptions, "Slot descriptions (coach)");
  command->add_option("--embeddings", options->embeddings,
                      "Pretrained word embeddings (coach, tagger)");
  command->callback([options, &out, status] {
    RunTrain(*options, out);
    *status = kExitOk;
  });
  return command;
}

CLI::App* AddEvalCommand(CLI::App& app, std::ostream& out, int* status) {
  auto options = std::make_shared<EvalOptions>();
  CLI::App* command = app.add_subcommand("eval", "Score predictions against gold data");
  AddCommonOptions(*command, options->common);
  command->add_option("--gold", options->gold, "Gold data")->required();
  command->add_option("--pred", options->pred, "Predictions in the gold format");
  command->add_option("--model", options->model, "Predict with this model directory instead");
  command->add_option("--kind", options->kind, "Model kind")
      ->check(CLI::IsMember({"auto", "x2parser", "coach", "tagger"}));
  command->add_option("--format", options->format, "Data format")
      ->check(CLI::IsMember({"auto", "parse-jsonl", "conll"}));
  command->add_option("--pred-out", options->pred_out,
                      "Write model predictions (flat JSONL for parses, CoNLL otherwise)");
  command->callback([options, &out, status] {
    RunEval(*options, out);
    *status = kExitOk;
  });
  return command;
}

CLI::App* AddRefineCommand(CLI::App& app, std::ostream& out, int* status) {
  auto options = std::make_shared<RefineOptions>();
  CLI::App* command =
      app.add_subcommand("refine", "Orthogonal refinement of source embeddings onto a target");
  AddCommonOptions(*command, options->common);
  command->add_option("--source", options->source, "Source embeddings")->required();
  command->add_option("--target", options->target, "Target embeddings")->required();
  command->add_option("--dict", options->dictionary, "Seed dictionary TSV");
  command->add_option("--lang", options->language, "Built-in seed dictionary (es, th)");
  command->add_option("--out", options->out, "Mapped source embeddings")->required();
  command->add_option("--mapping-out", options->mapping_out, "Write the d x d mapping");
  command->add_option("--threshold", options->threshold, "Stop below this mean distance");
  command->add_option("--iterations", options->iterations, "Maximum iterations")
      ->check(CLI::PositiveNumber);
  command->add_flag("--no-preprocess", options->no_preprocess,
                    "Skip normalize-center-normalize preprocessing");
  command->callback([options, &out, status] {
    RunRefine(*options, out);
    *status = kExitOk;
  });
  return command;
}

CLI::App* AddBenchCommand(CLI::App& app, std::ostream& out, int* status) {
  auto options = std::make_shared<BenchOptions>();
  CLI::App* command = app.add_subcommand("bench", "Parse latency by utterance length");
  AddCommonOptions(*command, options->common);
  command->add_option("--model", options->model, "Trained x2parser directory");
  command->add_option("--train", options->train,
                      "Parse JSONL for a randomly initialized parser's vocabulary");
  command->add_option("--buckets", options->buckets, "Utterance lengths")->delimiter(',');
  command->add_option("--repeats", options->repeats, "Timed parses per bucket")
      ->check(CLI::PositiveNumber);
  command->add_option("--warmup", options->warmup, "Untimed parses per bucket")
      ->check(CLI::NonNegativeNumber);
  command->add_flag("--include-timings", options->include_timings,
                    "Keep wall-clock medians in the JSON report");
  command->callback([options, &out, status] {
    RunBench(*options, out);
    *status = kExitOk;
  });
  return command;
}

}  // namespace xfer::cli
