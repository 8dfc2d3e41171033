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

#ifndef XFER_TOOLS_CLI_CLI_H_
#define XFER_TOOLS_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace xfer::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitValidationError = 2;
inline constexpr int kExitUsage = 64;

// Runs the xfer command line. `args` excludes the program name. Output goes
// to `out`, diagnostics and usage text to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xfer::cli

#endif  // XFER_TOOLS_CLI_CLI_H_
