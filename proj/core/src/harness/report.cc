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
#include "xfer/harness/report.h"

#include <cstdio>

#include "json.hpp"
#include "xfer/common/error.h"
#include "xfer/common/strings.h"

namespace xfer::harness {

namespace {

using Json = nlohmann::ordered_json;

std::string Fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

std::string Row(const std::string& name, const std::string& value) {
  std::string line = "  " + name;
  if (line.size() < 28) line.append(28 - line.size(), ' ');
  return line + value + "\n";
}

template <typename T>
T Get(const Json& object, const char* key) {
  if (!object.contains(key)) {
    throw Error(ErrorCode::kFormatError, std::string("report: missing field '") + key + "'");
  }
  try {
    return object.at(key).get<T>();
  } catch (const Json::exception&) {
    throw Error(ErrorCode::kFormatError, std::string("report: field '") + key + "' has the wrong type");
  }
}

}  // namespace

EvalReport ParseReport(std::span<const parse_repr::ParseTree> gold,
                       std::span<const parse_repr::FlatLabels> predicted) {
  Require(gold.size() == predicted.size(), ErrorCode::kShapeMismatch,
          "gold and predicted counts differ");
  std::vector<bool> hit(gold.size());
  for (size_t i = 0; i < gold.size(); ++i) {
    hit[i] = ExactMatch(parse_repr::EncodeFlat(gold[i]), predicted[i]);
  }
  auto rate = [&](const std::vector<size_t>& indices) {
    if (indices.empty()) return 0.0;
    int hits = 0;
    for (size_t i : indices) hits += hit[i] ? 1 : 0;
    return 100.0 * hits / static_cast<double>(indices.size());
  };
  std::vector<size_t> all(gold.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  const NestedSplit split = SplitByNesting(gold);
  EvalReport report;
  report.examples = static_cast<int>(gold.size());
  report.exact_match = rate(all);
  report.nested_examples = static_cast<int>(split.nested.size());
  report.non_nested_examples = static_cast<int>(split.non_nested.size());
  report.nested_exact_match = rate(split.nested);
  report.non_nested_exact_match = rate(split.non_nested);
  return report;
}

EvalReport ParseReport(std::span<const parse_repr::ParseTree> gold,
                       std::span<const parse_repr::ParseTree> predicted) {
  Require(gold.size() == predicted.size(), ErrorCode::kShapeMismatch,
          "gold and predicted tree counts differ");
  std::vector<parse_repr::FlatLabels> flat;
  for (size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i].tokens == gold[i].tokens) {
      flat.push_back(parse_repr::EncodeFlat(predicted[i]));
    } else {
      flat.emplace_back();  // token mismatch never matches
    }
  }
  return ParseReport(gold, std::span<const parse_repr::FlatLabels>(flat));
}

EvalReport TaggingReport(std::span<const TaggedSequence> gold,
                         std::span<const TaggedSequence> predicted) {
  EvalReport report;
  report.examples = static_cast<int>(gold.size());
  report.bio = BioF1(gold, predicted);
  return report;
}

std::string ReportToJson(const EvalReport& report) {
  Json j;
  j["examples"] = report.examples;
  if (report.bio) {
    j["bio"] = Json{{"precision", report.bio->precision},
                    {"recall", report.bio->recall},
                    {"f1", report.bio->f1},
                    {"gold_spans", report.bio->gold_spans},
                    {"predicted_spans", report.bio->predicted_spans},
                    {"correct_spans", report.bio->correct_spans}};
  }
  if (report.exact_match) j["exact_match"] = *report.exact_match;
  if (report.nested_exact_match) j["nested_exact_match"] = *report.nested_exact_match;
  if (report.non_nested_exact_match) j["non_nested_exact_match"] = *report.non_nested_exact_match;
  j["nested_examples"] = report.nested_examples;
  j["non_nested_examples"] = report.non_nested_examples;
  j["repairs"] = report.repairs;
  Json latency = Json::array();
  for (const LatencyRow& row : report.latency) {
    latency.push_back(Json{{"length", row.length},
                           {"median_ms", row.median_ms},
                           {"encoder_passes", row.encoder_passes},
                           {"decoder_passes", row.decoder_passes}});
  }
  j["latency"] = latency;
  return j.dump(2) + "\n";
}

EvalReport ReportFromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, std::string("report: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kFormatError, "report: expected a JSON object");
  EvalReport report;
  report.examples = Get<int>(j, "examples");
  if (j.contains("bio")) {
    const Json& b = j.at("bio");
    BioScores scores;
    scores.precision = Get<double>(b, "precision");
    scores.recall = Get<double>(b, "recall");
    scores.f1 = Get<double>(b, "f1");
    scores.gold_spans = Get<int>(b, "gold_spans");
    scores.predicted_spans = Get<int>(b, "predicted_spans");
    scores.correct_spans = Get<int>(b, "correct_spans");
    report.bio = scores;
  }
  if (j.contains("exact_match")) report.exact_match = Get<double>(j, "exact_match");
  if (j.contains("nested_exact_match")) {
    report.nested_exact_match = Get<double>(j, "nested_exact_match");
  }
  if (j.contains("non_nested_exact_match")) {
    report.non_nested_exact_match = Get<double>(j, "non_nested_exact_match");
  }
  report.nested_examples = Get<int>(j, "nested_examples");
  report.non_nested_examples = Get<int>(j, "non_nested_examples");
  report.repairs = Get<int>(j, "repairs");
  for (const Json& row : Get<Json>(j, "latency")) {
    report.latency.push_back({Get<int>(row, "length"), Get<double>(row, "median_ms"),
                              Get<int>(row, "encoder_passes"), Get<int>(row, "decoder_passes")});
  }
  return report;
}

std::string ReportToText(const EvalReport& report) {
  std::string out;
  // A latency-only report (no scored examples) prints just the timing table.
  if (report.examples > 0 || report.latency.empty()) {
    out += "metric                      value\n";
    out += Row("examples", std::to_string(report.examples));
    if (report.bio) {
      out += Row("precision", Fixed(report.bio->precision, 2));
      out += Row("recall", Fixed(report.bio->recall, 2));
      out += Row("f1", Fixed(report.bio->f1, 2));
    }
    if (report.exact_match) out += Row("exact_match", Fixed(*report.exact_match, 2));
    if (report.nested_exact_match) {
      out += Row("exact_match (nested)", Fixed(*report.nested_exact_match, 2) + "  n=" +
                                             std::to_string(report.nested_examples));
    }
    if (report.non_nested_exact_match) {
      out += Row("exact_match (non-nested)", Fixed(*report.non_nested_exact_match, 2) + "  n=" +
                                                 std::to_string(report.non_nested_examples));
    }
    out += Row("repairs", std::to_string(report.repairs));
  }
  if (!report.latency.empty()) {
    if (!out.empty()) out += "\n";
    out += "length  median_ms  encoder_passes  decoder_passes\n";
    for (const LatencyRow& row : report.latency) {
      char line[128];
      std::snprintf(line, sizeof(line), "%6d  %9.3f  %14d  %14d\n", row.length, row.median_ms,
                    row.encoder_passes, row.decoder_passes);
      out += line;
    }
  }
  return out;
}

}  // namespace xfer::harness
