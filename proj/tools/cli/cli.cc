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
#include "cli/cli.h"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <sstream>

#include "cli/common.h"
#include "xfer/common/error.h"

namespace xfer::cli {

namespace {

const std::vector<std::string> kSubcommands = {"convert", "train", "eval",
                                               "augment", "refine", "bench"};

bool IsValidationCode(ErrorCode code) {
  return code != ErrorCode::kMissingResource;
}

}  // namespace

void AddCommonOptions(CLI::App& command, CommonOptions& options) {
  command.add_option("--config", options.config_path, "Key/value config file");
  command.add_option("--set", options.overrides, "Config override key=value (repeatable)");
  command.add_option("--report", options.report_path, "Write a JSON metrics report here");
}

KeyValueConfig ResolveConfig(const CommonOptions& options) {
  KeyValueConfig config;
  if (!options.config_path.empty()) config = KeyValueConfig::Load(options.config_path);
  config.ApplyOverrides(options.overrides);
  if (const char* seed = std::getenv("XFER_SEED"); seed != nullptr && *seed != '\0') {
    const std::string text(seed);
    Require(std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }),
            ErrorCode::kInvalidArgument, "XFER_SEED must be a non-negative integer");
    config.Set("seed", text);
  }
  return config;
}

uint64_t ResolveSeed(const KeyValueConfig& config, uint64_t fallback) {
  return static_cast<uint64_t>(config.GetInt("seed", static_cast<int64_t>(fallback)));
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"xfer: cross-lingual and cross-domain sequence labeling and parsing toolkit",
               "xfer"};
  app.require_subcommand(1);
  int status = kExitOk;
  AddConvertCommand(app, out, &status);
  AddTrainCommand(app, out, &status);
  AddEvalCommand(app, out, &status);
  AddAugmentCommand(app, out, &status);
  AddRefineCommand(app, out, &status);
  AddBenchCommand(app, out, &status);

  const bool asks_help = !args.empty() && (args[0] == "-h" || args[0] == "--help");
  if (!asks_help &&
      (args.empty() || std::find(kSubcommands.begin(), kSubcommands.end(), args[0]) ==
                           kSubcommands.end())) {
    if (!args.empty()) err << "xfer: unknown subcommand '" << args[0] << "'\n\n";
    err << app.help();
    return kExitUsage;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidationError;
  } catch (const Error& e) {
    err << "xfer: " << e.what() << "\n";
    return IsValidationCode(e.code()) ? kExitValidationError : kExitRuntimeError;
  } catch (const std::exception& e) {
    err << "xfer: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return status;
}

}  // namespace xfer::cli
