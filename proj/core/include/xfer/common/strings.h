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
#ifndef XFER_COMMON_STRINGS_H_
#define XFER_COMMON_STRINGS_H_

#include <string>
#include <string_view>
#include <vector>

namespace xfer {

// Splits on runs of ASCII whitespace; no empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view text);

// Splits on every occurrence of `sep`; keeps empty pieces.
std::vector<std::string> Split(std::string_view text, char sep);

std::string_view Trim(std::string_view text);
std::string ToUpper(std::string_view text);
std::string ToLower(std::string_view text);
std::string Join(const std::vector<std::string>& pieces, std::string_view sep);

// Shortest decimal text that parses back to exactly \`value\`.
std::string FormatDouble(double value);
bool StartsWith(std::string_view text, std::string_view prefix);
bool EndsWith(std::string_view text, std::string_view suffix);

// Case-insensitive ASCII equality.
bool EqualsIgnoreCase(std::string_view a, std::string_view b);

}  // namespace xfer

#endif  // XFER_COMMON_STRINGS_H_
