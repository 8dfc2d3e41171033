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

#ifndef XFER_TOOLS_CLI_COMMON_H_
#define XFER_TOOLS_CLI_COMMON_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "xfer/common/kv_config.h"

namespace xfer::cli {

using Json = nlohmann::ordered_json;

// Options every subcommand accepts: a key/value config file, repeated
// "--set key=value" overrides and an optional JSON report path.
struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string report_path;
};

void AddCommonOptions(CLI::App& command, CommonOptions& options);

// Config file, then --set overrides, then the XFER_SEED environment
// variable (which replaces "seed"). Throws kInvalidArgument for a
// non-numeric XFER_SEED.
KeyValueConfig ResolveConfig(const CommonOptions& options);

// Seed from the resolved config, `fallback` when absent.
uint64_t ResolveSeed(const KeyValueConfig& config, uint64_t fallback);

// Writes `report` (pretty JSON plus newline) when a path was given.
void WriteReport(const CommonOptions& options, const Json& report);
void WriteTextFile(const std::string& path, const std::string& text);

// Subcommand registration. Each returns the subcommand; its callback runs the
// command and stores the exit code in *status.
CLI::App* AddConvertCommand(CLI::App& app, std::ostream& out, int* status);
CLI::App* AddAugmentCommand(CLI::App& app, std::ostream& out, int* status);
CLI::App* AddTrainCommand(CLI::App& app, std::ostream& out, int* status);
CLI::App* AddEvalCommand(CLI::App& app, std::ostream& out, int* status);
CLI::App* AddRefineCommand(CLI::App& app, std::ostream& out, int* status);
CLI::App* AddBenchCommand(CLI::App& app, std::ostream& out, int* status);

}  // namespace xfer::cli

#endif  // XFER_TOOLS_CLI_COMMON_H_
