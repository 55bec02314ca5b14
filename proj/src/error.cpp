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

#include "qalam/error.h"

namespace qalam {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Io: return "IoError";
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::Schema: return "SchemaError";
        case ErrorCode::Ref: return "RefError";
        case ErrorCode::Range: return "RangeError";
        case ErrorCode::UnsupportedCharacter: return "UnsupportedCharacter";
        case ErrorCode::LeadingMark: return "LeadingMark";
        case ErrorCode::DuplicateMark: return "DuplicateMark";
        case ErrorCode::EmptyWord: return "EmptyWord";
        case ErrorCode::NoGlyph: return "NoGlyph";
        case ErrorCode::MissingAnchor: return "MissingAnchor";
        case ErrorCode::BadComponent: return "BadComponent";
        case ErrorCode::MissingVariant: return "MissingVariant";
        case ErrorCode::CapacityExceeded: return "CapacityExceeded";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::WordTooWide: return "WordTooWide";
        case ErrorCode::NoFeasibleBreak: return "NoFeasibleBreak";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, std::string detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail),
          mCode(code),
          mDetail(std::move(detail)) {}

}  // namespace qalam
