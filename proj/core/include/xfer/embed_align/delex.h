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

#ifndef XFER_EMBED_ALIGN_DELEX_H_
#define XFER_EMBED_ALIGN_DELEX_H_

#include <string>
#include <vector>

namespace xfer::embed_align {

// Replaces number, time and duration tokens with placeholders. One token in,
// one token out (labels stay aligned). Patterns, tried in order,
// case-insensitive:
//   \d{1,2}(:\d{2})?\s?(am|pm)  e.g. "9pm", "9:30am"   -> @time
//   \d{1,2}:\d{2}               e.g. "21:30"           -> @time
//   \d+([.,]\d+)?(st|nd|rd|th)? e.g. "9", "3.5", "2nd" -> @number
//   am | pm | a.m. | p.m.                              -> @time-period
//   duration units (en/es): sec(ond)s, min(ute)s, hours, days, weeks,
//   months, years, segundos, minutos, horas, días, semanas, meses, años
//                                                      -> @duration
// Placeholders start with '@' and match no pattern, so the function is
// idempotent. Thus "9 pm" -> "@number @time-period".
std::vector<std::string> Delexicalize(const std::vector<std::string>& tokens);

}  // namespace xfer::embed_align

#endif  // XFER_EMBED_ALIGN_DELEX_H_
