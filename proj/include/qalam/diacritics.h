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

#ifndef QALAM_DIACRITICS_H
#define QALAM_DIACRITICS_H

#include <cstddef>
#include <vector>

#include "qalam/diagnostic.h"
#include "qalam/font.h"
#include "qalam/shaper.h"

namespace qalam {

struct PlacedMark {
    GlyphId mark;       // nominal mark glyph
    GlyphId glyph;      // glyph of the chosen size variant
    SizeVariant variant = SizeVariant::Normal;
    Units x = 0;        // origin relative to the owner origin, glyph coordinates
    Units y = 0;
    std::size_t index = 0;      // glyph index of the mark in the word
    std::size_t owner = 0;      // base glyph index
    std::size_t component = 0;  // ligature component of the owner
    MarkPlacement side = MarkPlacement::Above;
    bool pinned = false;        // Shadda and marks stacked on it

    bool operator==(const PlacedMark&) const = default;
};

struct GapMeasure {
    std::size_t owner = 0;
    Units width = 0;

    bool operator==(const GapMeasure&) const = default;
};

struct DiacriticParams {
    Units gap_epsilon = 10;
};

struct MarkLayout {
    std::vector<PlacedMark> marks;
    std::vector<Diagnostic> diagnostics;

    bool operator==(const MarkLayout&) const = default;
};

// Horizontal extent of a unit (a base glyph, or one component of a
// ligature) in the word's logical frame, elongation included.
Span unit_span(const ShapedWord& word, const FontDescription& font, std::size_t owner, std::size_t component = 0);

// Logical-frame ink of a placed mark.
Rect mark_ink(const ShapedWord& word, const FontDescription& font, const PlacedMark& mark);

// Marks as currently positioned in the word.
std::vector<PlacedMark> current_marks(const ShapedWord& word, const FontDescription& font);

// Free span over the unit on `side`: its extended ink span minus what the
// same-side marks of the neighbouring units cover. Never negative.
GapMeasure measure_gap(const ShapedWord& word, const FontDescription& font, std::size_t owner, MarkPlacement side,
                       std::size_t component = 0);

SizeVariant select_size_variant(Units gap, const SizeThresholds& thresholds);

// Runs the phase algorithm from the default positions. The word itself is
// not modified; use apply_marks to write the result back.
// Throws Error{MissingAnchor|MissingVariant}.
MarkLayout place_diacritics(const ShapedWord& word, const FontDescription& font, const DiacriticParams& params = {});

// Shifts the later of two overlapping same-side mark groups. Groups holding
// a pinned mark are not moved; an impossible fix is reported as an
// Unresolvable diagnostic and left unshifted.
MarkLayout resolve_collisions(std::vector<PlacedMark> marks, const ShapedWord& word, const FontDescription& font,
                              const DiacriticParams& params = {});

void apply_marks(ShapedWord& word, const std::vector<PlacedMark>& marks);

// Nominal mark of a size-variant glyph (the glyph itself if it is nominal).
const GlyphId& nominal_mark(const FontDescription& font, const GlyphId& glyph);

}  // namespace qalam

#endif  // QALAM_DIACRITICS_H
