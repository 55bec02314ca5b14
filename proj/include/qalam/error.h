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

#ifndef QALAM_ERROR_H
#define QALAM_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qalam {

// Stable error codes. The names double as the diagnostic/JSON error tokens.
enum class ErrorCode {
    Io,
    Parse,
    Schema,
    Ref,
    Range,
    UnsupportedCharacter,
    LeadingMark,
    DuplicateMark,
    EmptyWord,
    NoGlyph,
    MissingAnchor,
    BadComponent,
    MissingVariant,
    CapacityExceeded,
    Infeasible,
    WordTooWide,
    NoFeasibleBreak,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string detail);

    ErrorCode code() const noexcept { return mCode; }
    const std::string& detail() const noexcept { return mDetail; }

private:
    ErrorCode mCode;
    std::string mDetail;
};

}  // namespace qalam

#endif  // QALAM_ERROR_H
