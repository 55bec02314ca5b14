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

#ifndef QALAM_SHAPER_H
#define QALAM_SHAPER_H

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qalam/font.h"
#include "qalam/lookup.h"
#include "qalam/text_model.h"

namespace qalam {

// Feature tags used by the bundled lookups.
inline constexpr std::string_view kFeatureRequiredLigatures = "rlig";
inline constexpr std::string_view kFeatureLigatures = "liga";
inline constexpr std::string_view kFeatureAlternates = "jalt";

struct WordVariant {
    std::string id;                // "default", "lig_off", "alt:<glyph>"
    Units width = 0;
    Units max_extra = 0;           // total kashida capacity
    std::vector<std::string> description;  // "ligature_on", "ligature_off", "allograph:<glyph>"
    bool ligatures_off = false;
    std::optional<std::pair<std::size_t, GlyphId>> allograph;  // glyph index, replacement

    bool operator==(const WordVariant&) const = default;
};

/// A shaped word: placed glyphs in logical order plus the data needed to
/// reshape it.
struct ShapedWord {
    std::vector<Cluster> clusters;
    std::vector<PlacedGlyph> glyphs;
    std::vector<std::vector<std::size_t>> source_clusters;  // per glyph
    FeatureSet features;      // substitution features the word was shaped with
    std::string variant = "default";

    Units natural_width() const;
    // Letter driving elongation of a base glyph (last covered cluster).
    const Cluster& stretch_cluster(std::size_t glyph) const;
    std::vector<std::size_t> base_indices() const;

    bool operator==(const ShapedWord&) const = default;
};

// Throws Error{NoGlyph}.
ShapedWord shape_word(std::span<const Cluster> clusters, const FontDescription& font, const FeatureSet& features);

// Default first; deduplicated by id.
std::vector<WordVariant> word_variants(const ShapedWord& word, const FontDescription& font);

// The word as rendered with the given variant.
ShapedWord realize(const ShapedWord& word, const WordVariant& variant, const FontDescription& font);

// Recomputes positions after elongations changed.
void relayout(ShapedWord& word, const FontDescription& font);

// Sum of the kashida capacity of the word's stretchable glyphs.
Units stretch_capacity(const ShapedWord& word, const FontDescription& font);

}  // namespace qalam

#endif  // QALAM_SHAPER_H
