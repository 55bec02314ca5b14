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

#ifndef QALAM_LOOKUP_H
#define QALAM_LOOKUP_H

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qalam/font.h"
#include "qalam/geometry.h"
#include "qalam/lookup_rule.h"

namespace qalam {

using FeatureSet = std::set<std::string, std::less<>>;

// One glyph in a substitution run. Bases carry the source clusters they
// cover (several after ligation); marks carry their owning cluster.
struct RunItem {
    GlyphId glyph;
    bool is_mark = false;
    std::vector<std::size_t> clusters;

    bool operator==(const RunItem&) const = default;
};

// Applies the rules in order, one left-to-right pass each. Rules whose
// feature is not in `features` are skipped.
std::vector<RunItem> apply_gsub(const FontDescription& font, std::span<const LookupRule> rules,
                                std::vector<RunItem> run, const FeatureSet& features);

// Convenience form over bare glyph ids; mark status comes from the font.
std::vector<GlyphId> apply_gsub(const FontDescription& font, std::span<const LookupRule> rules,
                                std::span<const GlyphId> glyphs, const FeatureSet& features);

// Attachment arithmetic. All points are in glyph (font) coordinates; the
// result is the mark origin. Anchors of an elongated base ride half the
// elongation.
// Throws Error{MissingAnchor}.
Point attach_mark_to_base(Point base_origin, const GlyphMetrics& base, const MarkGlyph& mark, Units elongation = 0);
// Only the last component rides the elongation.
// Throws Error{BadComponent|MissingAnchor}.
Point attach_mark_to_ligature(Point lig_origin, const LigatureEntry& lig, std::size_t component, const MarkGlyph& mark,
                              Units elongation = 0);
// Throws Error{MissingAnchor}.
Point attach_mark_to_mark(Point lower_origin, const MarkGlyph& lower, const MarkGlyph& upper);

struct Attachment {
    std::size_t index = 0;  // base glyph, or the lower mark when stacked
    MarkPlacement cls = MarkPlacement::Above;
    bool to_mark = false;

    bool operator==(const Attachment&) const = default;
};

// A positioned glyph of a word.
//
// Bases: x_offset is the pen position in the word's logical frame (x grows in
// reading order, the renderer mirrors it); y_offset is a vertical adjustment.
// Marks: (x_offset, y_offset) is the mark origin relative to the owner's
// origin, in glyph coordinates.
struct PlacedGlyph {
    GlyphId glyph;
    Units x_offset = 0;
    Units y_offset = 0;
    Units advance = 0;
    Units elongation = 0;
    std::optional<Attachment> attached_to;
    bool is_mark = false;
    std::size_t owner = 0;      // marks: index of the owning base glyph
    std::size_t component = 0;  // marks: ligature component of the owner

    bool operator==(const PlacedGlyph&) const = default;
};

// Builds placed glyphs from a substituted run. Marks are owned by the
// preceding base; their component is the position of their cluster among
// the owner's clusters.
std::vector<PlacedGlyph> placed_from_run(std::span<const RunItem> run);

// Recomputes advances and offsets from the positioning rules and the
// current elongations. Marks with no covering attachment rule fall back to
// the owner's anchors.
void apply_gpos(const FontDescription& font, std::span<const LookupRule> rules, std::vector<PlacedGlyph>& glyphs,
                const FeatureSet& features);

// Ink of a placed glyph in the word's logical frame (mirrored glyph
// coordinates). Base ink includes the elongation.
Rect logical_ink(const FontDescription& font, std::span<const PlacedGlyph> glyphs, std::size_t index);
// Logical x of a glyph-coordinate x inside base `owner`.
Units logical_x(std::span<const PlacedGlyph> glyphs, std::size_t owner, Units x);

}  // namespace qalam

#endif  // QALAM_LOOKUP_H
