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

#ifndef XFER_HARNESS_REPORT_H_
#define XFER_HARNESS_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xfer/harness/latency.h"
#include "xfer/harness/metrics.h"

namespace xfer::harness {

// Evaluation summary. Rates are stored on the 0-100 scale. Absent sections
// are omitted from the JSON form.
struct EvalReport {
  int examples = 0;
  std::optional<BioScores> bio;
  std::optional<double> exact_match;
  std::optional<double> nested_exact_match;
  std::optional<double> non_nested_exact_match;
  int nested_examples = 0;
  int non_nested_examples = 0;
  int repairs = 0;
  std::vector<LatencyRow> latency;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Exact-match report over aligned gold/predicted trees, with the nested /
// non-nested breakdown (by gold).
EvalReport ParseReport(std::span<const parse_repr::ParseTree> gold,
                       std::span<const parse_repr::ParseTree> predicted);
// Same, against predicted flat labels (which need not decode to a tree).
EvalReport ParseReport(std::span<const parse_repr::ParseTree> gold,
                       std::span<const parse_repr::FlatLabels> predicted);
// BIO F1 report over aligned sequences.
EvalReport TaggingReport(std::span<const TaggedSequence> gold,
                         std::span<const TaggedSequence> predicted);

// Pretty-printed JSON with a fixed key order; numbers use the shortest
// round-trip form, so equal reports serialize to equal bytes.
std::string ReportToJson(const EvalReport& report);
// Throws Error(kFormatError) on malformed input.
EvalReport ReportFromJson(std::string_view text);
// Plain-text table.
std::string ReportToText(const EvalReport& report);

}  // namespace xfer::harness

#endif  // XFER_HARNESS_REPORT_H_
