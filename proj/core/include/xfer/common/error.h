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

#ifndef XFER_COMMON_ERROR_H_
#define XFER_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace xfer {

// Every failure raised by the library carries one of these codes so that
// callers (the CLI in particular) can map failures to exit statuses without
// parsing messages.
enum class ErrorCode {
  kUnbalancedBrackets,
  kTokenMismatch,
  kInvariantViolation,
  kFertilityOverflow,
  kNestedIntentConflict,
  kUnrepresentableTree,
  kMalformedBio,
  kUnnestableSpans,
  kShapeMismatch,
  kInvalidArgument,
  kFormatError,
  kMissingResource,
  kDegenerateInput,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Throws Error(code, message) when `condition` is false.
inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace xfer

#endif  // XFER_COMMON_ERROR_H_
