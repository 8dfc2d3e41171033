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
// convert and augment subcommands.

#include <fstream>
#include <set>

#include "cli/cli.h"
#include "cli/common.h"
#include "xfer/augment/corpus.h"
#include "xfer/augment/masking.h"
#include "xfer/augment/shuffle.h"
#include "xfer/common/error.h"
#include "xfer/common/random.h"
#include "xfer/common/strings.h"
#include "xfer/harness/datasets.h"
#include "xfer/parse_repr/codec.h"
#include "xfer/parse_repr/jsonl.h"

namespace xfer::cli {

namespace {

std::vector<std::string> ReadNumberedLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kMissingResource, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

struct ConvertOptions {
  CommonOptions common;
  std::string in;
  std::string out;
  std::string to = "auto";
};

void RunConvert(const ConvertOptions& options, std::ostream& out) {
  const KeyValueConfig config = ResolveConfig(options.common);
  parse_repr::CodecOptions codec;
  codec.max_fertility = static_cast<int>(config.GetInt("max_fertility", codec.max_fertility));
  const std::vector<std::string> lines = ReadNumberedLines(options.in);
  std::string direction = options.to;
  if (direction == "auto") {
    direction = "flat";
    for (const std::string& line : lines) {
      if (Trim(line).empty()) continue;
      direction = line.find("\"parse\"") != std::string::npos ? "flat" : "tree";
      break;
    }
  }
  std::vector<std::string> output;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const std::string where = options.in + ":" + std::to_string(i + 1);
    if (direction == "flat") {
      const parse_repr::ParseTree tree = parse_repr::TreeFromJson(lines[i], where);
      output.push_back(parse_repr::FlatToJson({tree.tokens, parse_repr::EncodeFlat(tree, codec)}));
    } else {
      const parse_repr::FlatRecord record = parse_repr::FlatFromJson(lines[i], where);
      output.push_back(
          parse_repr::TreeToJson(parse_repr::DecodeFlat(record.labels, record.tokens, codec)));
    }
  }
  parse_repr::WriteLines(options.out, output);
  out << "converted " << output.size() << " records to " << direction << " form\n";
  WriteReport(options.common, Json{{"command", "convert"},
                                   {"direction", direction},
                                   {"records", output.size()}});
}

struct ShuffleOptions {
  CommonOptions common;
  std::string in;
  std::string out;
  std::string k = "inf";
  int copies = 0;
};

void RunShuffle(const ShuffleOptions& options, std::ostream& out) {
  const KeyValueConfig config = ResolveConfig(options.common);
  const uint64_t seed = ResolveSeed(config, 13);
  const std::optional<int> k = augment::ParseShuffleBound(options.k);
  const auto data = harness::LoadConll(options.in);
  std::vector<harness::TaggedSequence> result;
  if (options.copies <= 0) {
    result = augment::MakeNoisyTestset(data, k, seed);
  } else {
    for (size_t i = 0; i < data.size(); ++i) {
      const auto copies = augment::ShuffledCopies(data[i], k, options.copies, DeriveSeed(seed, i));
      result.insert(result.end(), copies.begin(), copies.end());
    }
  }
  harness::SaveConll(result, options.out);
  int changed = 0;
  if (options.copies <= 0) {
    for (size_t i = 0; i < data.size(); ++i) changed += result[i] == data[i] ? 0 : 1;
  }
  out << "wrote " << result.size() << " sequences (k=" << options.k << ")\n";
  WriteReport(options.common, Json{{"command", "augment shuffle"},
                                   {"k", options.k},
                                   {"seed", seed},
                                   {"input", data.size()},
                                   {"output", result.size()},
                                   {"reordered", changed}});
}

struct MaskOptions {
  CommonOptions common;
  std::string in;
  std::string out;
  std::string masked_out;
  std::string mode = "span";
  double rate = augment::kDefaultMaskRate;
};

void RunMask(const MaskOptions& options, std::ostream& out) {
  const KeyValueConfig config = ResolveConfig(options.common);
  const uint64_t seed = ResolveSeed(config, 13);
  Require(options.rate >= 0.0 && options.rate <= 1.0, ErrorCode::kInvalidArgument,
          "rate must lie in [0, 1]");
  const std::vector<std::string> sentences = harness::LoadCorpusLines(options.in);
  std::set<std::string> vocabulary_set;
  for (const std::string& sentence : sentences) {
    for (const std::string& token : SplitWhitespace(sentence)) vocabulary_set.insert(token);
  }
  const std::vector<std::string> vocabulary(vocabulary_set.begin(), vocabulary_set.end());
  std::vector<std::string> plans;
  std::vector<std::string> masked;
  long masked_total = 0;
  long token_total = 0;
  for (size_t i = 0; i < sentences.size(); ++i) {
    const std::vector<std::string> tokens = SplitWhitespace(sentences[i]);
    const int n = static_cast<int>(tokens.size());
    const uint64_t sentence_seed = DeriveSeed(seed, i);
    const augment::MaskPlan plan = options.mode == "span"
                                       ? augment::SpanMask(n, options.rate, sentence_seed)
                                       : augment::TokenMask(n, options.rate, sentence_seed);
    plans.push_back(augment::MaskPlanToJson(tokens, plan));
    masked.push_back(
        Join(augment::ApplyMaskPlan(tokens, plan, vocabulary, DeriveSeed(sentence_seed, 1)), " "));
    masked_total += static_cast<long>(plan.size());
    token_total += n;
  }
  parse_repr::WriteLines(options.out, plans);
  if (!options.masked_out.empty()) parse_repr::WriteLines(options.masked_out, masked);
  out << "masked " << masked_total << " of " << token_total << " tokens in " << sentences.size()
      << " sentences (" << options.mode << ")\n";
  WriteReport(options.common, Json{{"command", "augment mask"},
                                   {"mode", options.mode},
                                   {"rate", options.rate},
                                   {"seed", seed},
                                   {"sentences", sentences.size()},
                                   {"tokens", token_total},
                                   {"masked", masked_total}});
}

struct SelectOptions {
  CommonOptions common;
  std::string in;
  std::string out;
  std::string level = "domain";
  std::string entities_path;
  int min_entities = 2;
  std::string task_corpus;
  int upsample = 2;
};

void RunSelect(const SelectOptions& options, std::ostream& out) {
  const KeyValueConfig config = ResolveConfig(options.common);
  const uint64_t seed = ResolveSeed(config, 13);
  augment::CorpusSpec spec;
  spec.level = augment::ParseCorpusLevel(options.level);
  spec.min_entities = options.min_entities;
  spec.upsample = options.upsample;
  if (!options.entities_path.empty()) spec.entities = harness::LoadCorpusLines(options.entities_path);
  const std::vector<std::string> sentences = harness::LoadCorpusLines(options.in);
  const augment::SelectionResult selection = augment::SelectCorpus(sentences, spec);
  std::vector<std::string> result = selection.sentences;
  size_t task_size = 0;
  if (!options.task_corpus.empty()) {
    const std::vector<std::string> task = harness::LoadCorpusLines(options.task_corpus);
    task_size = task.size();
    result = augment::IntegrateCorpora(selection.sentences, task, spec.upsample, seed);
  }
  harness::SaveCorpusLines(result, options.out);
  out << "selected " << selection.sentences.size() << " of " << sentences.size()
      << " sentences (" << options.level << "); wrote " << result.size() << "\n";
  WriteReport(options.common, Json{{"command", "augment select"},
                                   {"level", options.level},
                                   {"input", sentences.size()},
                                   {"selected", selection.sentences.size()},
                                   {"ratio", selection.ratio},
                                   {"task_corpus", task_size},
                                   {"output", result.size()}});
}

}  // namespace

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  Require(file.good(), ErrorCode::kMissingResource, "cannot write " + path);
  file << text;
}

void WriteReport(const CommonOptions& options, const Json& report) {
  if (options.report_path.empty()) return;
  WriteTextFile(options.report_path, report.dump(2) + "\n");
}

CLI::App* AddConvertCommand(CLI::App& app, std::ostream& out, int* status) {
  auto options = std::make_shared<ConvertOptions>();
  CLI::App* command = app.add_subcommand("convert", "Convert parse JSONL between tree and flat form");
  AddCommonOptions(*command, options->common);
  command->add_option("--in", options->in, "Input JSONL")->required();
  command->add_option("--out", options->out, "Output JSONL")->required();
  command->add_option("--to", options->to, "Target form")
      ->check(CLI::IsMember({"auto", "flat", "tree"}));
  command->callback([options, &out, status] {
    RunConvert(*options, out);
    *status = kExitOk;
  });
  return command;
}

CLI::App* AddAugmentCommand(CLI::App& app, std::ostream& out, int* status) {
  CLI::App* command = app.add_subcommand("augment", "Data augmentation");
  command->require_subcommand(1);

  auto shuffle = std::make_shared<ShuffleOptions>();
  CLI::App* shuffle_cmd =
      command->add_subcommand("shuffle", "Word-order shuffling with displacement bound k");
  AddCommonOptions(*shuffle_cmd, shuffle->common);
  shuffle_cmd->add_option("--in", shuffle->in, "Input CoNLL")->required();
  shuffle_cmd->add_option("--out", shuffle->out, "Output CoNLL")->required();
  shuffle_cmd->add_option("--k", shuffle->k, "Displacement bound (integer or inf)");
  shuffle_cmd->add_option("--copies", shuffle->copies,
                          "Shuffled copies per sequence (0: one noisy test copy each)")
      ->check(CLI::NonNegativeNumber);
  shuffle_cmd->callback([shuffle, &out, status] {
    RunShuffle(*shuffle, out);
    *status = kExitOk;
  });

  auto mask = std::make_shared<MaskOptions>();
  CLI::App* mask_cmd = command->add_subcommand("mask", "Token- or span-level masking plans");
  AddCommonOptions(*mask_cmd, mask->common);
  mask_cmd->add_option("--in", mask->in, "Input corpus, one sentence per line")->required();
  mask_cmd->add_option("--out", mask->out, "Output mask-plan JSONL")->required();
  mask_cmd->add_option("--masked-out", mask->masked_out, "Also write the masked sentences");
  mask_cmd->add_option("--mode", mask->mode, "Masking level")
      ->check(CLI::IsMember({"token", "span"}));
  mask_cmd->add_option("--rate", mask->rate, "Masking rate");
  mask_cmd->callback([mask, &out, status] {
    RunMask(*mask, out);
    *status = kExitOk;
  });

  auto select = std::make_shared<SelectOptions>();
  CLI::App* select_cmd = command->add_subcommand("select", "Corpus-level selection/integration");
  AddCommonOptions(*select_cmd, select->common);
  select_cmd->add_option("--in", select->in, "Input corpus, one sentence per line")->required();
  select_cmd->add_option("--out", select->out, "Output corpus")->required();
  select_cmd->add_option("--level", select->level, "Selection level")
      ->check(CLI::IsMember({"domain", "entity", "task"}));
  select_cmd->add_option("--entities", select->entities_path, "Entity list, one per line");
  select_cmd->add_option("--min-entities", select->min_entities, "Entity-level threshold");
  select_cmd->add_option("--task-corpus", select->task_corpus,
                         "Task corpus to integrate with the selection");
  select_cmd->add_option("--upsample", select->upsample, "Task corpus multiplicity")
      ->check(CLI::PositiveNumber);
  select_cmd->callback([select, &out, status] {
    RunSelect(*select, out);
    *status = kExitOk;
  });
  return command;
}

}  // namespace xfer::cli
