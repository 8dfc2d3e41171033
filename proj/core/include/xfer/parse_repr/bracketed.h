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
#ifndef XFER_PARSE_REPR_BRACKETED_H_
#define XFER_PARSE_REPR_BRACKETED_H_

#include <span>
#include <string>
#include <string_view>

#include "xfer/parse_repr/parse_tree.h"

namespace xfer::parse_repr {

// Reads the decoupled bracketed form, e.g.
//   "[IN:CREATE_CALL call [IN:GET_CONTACT Grandma ] ]"
// Whitespace separates items; "[IN:X" / "[SL:X" open a node, "]" closes one,
// anything else is a token. Labels are upper-cased. The leaf tokens must
// equal `tokens` in order.
//
// Throws Error with kUnbalancedBrackets, kTokenMismatch, or
// kInvariantViolation (any failed tree invariant, e.g. overlapping siblings
// or an empty node).
ParseTree ParseBracketed(std::string_view text, std::span<const std::string> tokens);

// Same, with tokens taken from the leaves.
ParseTree ParseBracketed(std::string_view text);

// Canonical form: single spaces, "[IN:"/"[SL:" prefixes, upper-case labels.
std::string ToBracketed(const ParseTree& tree);

}  // namespace xfer::parse_repr

#endif  // XFER_PARSE_REPR_BRACKETED_H_
