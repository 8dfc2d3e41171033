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
#include "xfer/augment/masking.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "xfer/common/error.h"
#include "xfer/common/random.h"

namespace xfer::augment {
namespace {

struct Run {
  int begin;
  int end;
};

std::vector<Run> Runs(const std::vector<int>& positions) {
  std::vector<Run> runs;
  for (int p : positions) {
    if (!runs.empty() && runs.back().end + 1 == p) {
      runs.back().end = p;
    } else {
      runs.push_back({p, p});
    }
  }
  return runs;
}

}  // namespace

int MaskedCount(int n, double rate) {
  Require(rate >= 0.0 && rate <= 1.0, ErrorCode::kInvalidArgument, "mask rate must be in [0, 1]");
  if (n < 7 || rate == 0.0) return 0;
  const int rounded = static_cast<int>(std::floor(rate * n + 0.5));
  return std::clamp(rounded, 1, n);
}

MaskPlan TokenMask(int n, double rate, uint64_t seed) {
  Require(n >= 1, ErrorCode::kInvalidArgument, "cannot mask an empty sequence");
  Rng rng(seed);
  MaskPlan plan;
  for (size_t p : rng.SampleWithoutReplacement(n, MaskedCount(n, rate))) {
    plan.positions.push_back(static_cast<int>(p));
  }
  for (size_t i = 0; i < plan.positions.size(); ++i) {
    const double u = rng.Uniform();
    plan.actions.push_back(u < 0.8 ? MaskAction::kMask
                                   : (u < 0.9 ? MaskAction::kRandom : MaskAction::kKeep));
  }
  return plan;
}

MaskPlan SpanMoves(const MaskPlan& plan, int n) {
  Require(plan.positions.size() == plan.actions.size(), ErrorCode::kShapeMismatch,
          "mask plan positions/actions differ in length");
  if (n <= 1 || plan.size() <= 1) return plan;
  // position -> action, kept sorted by position.
  std::vector<std::pair<int, MaskAction>> entries;
  for (size_t i = 0; i < plan.size(); ++i) entries.emplace_back(plan.positions[i], plan.actions[i]);
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  auto positions = [&] {
    std::vector<int> out;
    for (const auto& e : entries) out.push_back(e.first);
    return out;
  };

  // Walk the original isolated positions in ascending order.
  std::vector<int> isolated;
  for (const Run& run : Runs(positions())) {
    if (run.begin == run.end) isolated.push_back(run.begin);
  }
  for (int p : isolated) {
    std::vector<Run> runs = Runs(positions());
    auto self = std::find_if(runs.begin(), runs.end(),
                             [p](const Run& r) { return r.begin == p && r.end == p; });
    if (self == runs.end()) continue;  // already joined by an earlier move
    const Run* best = nullptr;
    int best_distance = 0;
    for (const Run& r : runs) {
      if (r.begin == p && r.end == p) continue;
      const int distance = r.begin > p ? r.begin - p : p - r.end;
      if (!best || distance < best_distance) {  // ascending runs: ties keep the lower one
        best = &r;
        best_distance = distance;
      }
    }
    if (!best) continue;
    const int target = best->begin > 0 ? best->begin - 1 : best->end + 1;
    if (target >= n) continue;
    for (auto& e : entries) {
      if (e.first == p) e.first = target;
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  MaskPlan out;
  for (const auto& e : entries) {
    out.positions.push_back(e.first);
    out.actions.push_back(e.second);
  }
  return out;
}

MaskPlan SpanMask(int n, double rate, uint64_t seed) {
  return SpanMoves(TokenMask(n, rate, seed), n);
}

std::vector<std::string> ApplyMaskPlan(const std::vector<std::string>& tokens,
                                       const MaskPlan& plan,
                                       const std::vector<std::string>& vocabulary, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> out = tokens;
  for (size_t i = 0; i < plan.size(); ++i) {
    const int p = plan.positions[i];
    Require(p >= 0 && p < static_cast<int>(tokens.size()), ErrorCode::kShapeMismatch,
            "mask position outside the sequence");
    switch (plan.actions[i]) {
      case MaskAction::kMask:
        out[p] = kMaskToken;
        break;
      case MaskAction::kRandom:
        if (!vocabulary.empty()) out[p] = vocabulary[rng.Below(vocabulary.size())];
        break;
      case MaskAction::kKeep:
        break;
    }
  }
  return out;
}

std::string MaskActionName(MaskAction action) {
  switch (action) {
    case MaskAction::kMask:
      return "mask";
    case MaskAction::kRandom:
      return "random";
    case MaskAction::kKeep:
      return "keep";
  }
  return "?";
}

MaskAction ParseMaskAction(const std::string& name) {
  if (name == "mask") return MaskAction::kMask;
  if (name == "random") return MaskAction::kRandom;
  if (name == "keep") return MaskAction::kKeep;
  throw Error(ErrorCode::kFormatError, "unknown mask action '" + name + "'");
}

std::string MaskPlanToJson(const std::vector<std::string>& tokens, const MaskPlan& plan) {
  nlohmann::ordered_json out;
  out["tokens"] = tokens;
  out["positions"] = plan.positions;
  std::vector<std::string> actions;
  for (MaskAction a : plan.actions) actions.push_back(MaskActionName(a));
  out["actions"] = actions;
  return out.dump();
}

MaskPlan MaskPlanFromJson(const std::string& line, std::vector<std::string>* tokens) {
  try {
    auto value = nlohmann::json::parse(line);
    MaskPlan plan;
    plan.positions = value.at("positions").get<std::vector<int>>();
    for (const auto& a : value.at("actions").get<std::vector<std::string>>()) {
      plan.actions.push_back(ParseMaskAction(a));
    }
    if (tokens) *tokens = value.at("tokens").get<std::vector<std::string>>();
    Require(plan.positions.size() == plan.actions.size(), ErrorCode::kFormatError,
            "positions and actions differ in length");
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("mask plan: ") + e.what());
  }
}

}  // namespace xfer::augment
