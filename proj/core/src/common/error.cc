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
#include "xfer/common/error.h"

namespace xfer {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnbalancedBrackets: return "UnbalancedBrackets";
    case ErrorCode::kTokenMismatch: return "TokenMismatch";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kFertilityOverflow: return "FertilityOverflow";
    case ErrorCode::kNestedIntentConflict: return "NestedIntentConflict";
    case ErrorCode::kUnrepresentableTree: return "UnrepresentableTree";
    case ErrorCode::kMalformedBio: return "MalformedBIO";
    case ErrorCode::kUnnestableSpans: return "UnnestableSpans";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kMissingResource: return "MissingResource";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
  }
  return "Unknown";
}

}  // namespace xfer
