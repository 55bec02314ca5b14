// Copyright 2026 The Qalam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QALAM_UTF8_H
#define QALAM_UTF8_H

#include <string>
#include <string_view>

namespace qalam {

// Throws Error{Parse} on malformed input (overlong forms, surrogates, truncation).
std::u32string utf8_decode(std::string_view bytes);
std::string utf8_encode(std::u32string_view text);

}  // namespace qalam

#endif  // QALAM_UTF8_H
