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

#ifndef QALAM_KASHIDA_H
#define QALAM_KASHIDA_H

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "qalam/font.h"
#include "qalam/shaper.h"

namespace qalam {

enum class KashidaPolicy { Single, Spread, Off };

std::string_view to_string(KashidaPolicy p);
std::optional<KashidaPolicy> kashida_policy_from(std::string_view s);

struct StretchSite {
    std::size_t glyph_index = 0;
    Units capacity = 0;
    int stretch_class = 0;
    // Priority key, compared lexicographically: typed tatweel first, then the
    // font's rank for the stretch class, then the word-final joint.
    bool hinted = false;
    int rank = 0;
    int position_weight = 0;

    bool operator==(const StretchSite&) const = default;
};

struct ElongationPlan {
    std::map<std::size_t, Units> allocations;  // glyph index -> elongation
    Units residual = 0;

    Units allocated() const;
    bool operator==(const ElongationPlan&) const = default;
};

// Highest priority first; ties go to the glyph closest to the word end.
std::vector<StretchSite> enumerate_sites(const ShapedWord& word, const FontDescription& font);

ElongationPlan allocate(const ShapedWord& word, const FontDescription& font, Units deficit,
                        KashidaPolicy policy = KashidaPolicy::Single);

// Sets the elongations and recomputes positions.
// Throws Error{CapacityExceeded}.
ShapedWord apply_plan(const ShapedWord& word, const ElongationPlan& plan, const FontDescription& font);

}  // namespace qalam

#endif  // QALAM_KASHIDA_H
