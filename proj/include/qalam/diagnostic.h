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

#ifndef QALAM_DIAGNOSTIC_H
#define QALAM_DIAGNOSTIC_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qalam {

enum class Severity { Error, Warn, Info };

std::string_view to_string(Severity s);

// Codes are stable tokens; docs/diagnostics.md lists them.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    std::optional<std::size_t> word;
    std::optional<std::size_t> glyph;

    bool operator==(const Diagnostic&) const = default;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace qalam

#endif  // QALAM_DIAGNOSTIC_H
