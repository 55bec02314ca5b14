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

#ifndef QALAM_FONT_H
#define QALAM_FONT_H

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qalam/diagnostic.h"
#include "qalam/geometry.h"
#include "qalam/lookup_rule.h"
#include "qalam/text_model.h"

namespace qalam {

enum class SizeVariant { Normal, Medium, Large };
enum class LigatureKind { Linguistic, Aesthetic };

std::string_view to_string(SizeVariant v);
std::optional<SizeVariant> size_variant_from(std::string_view s);
std::string_view to_string(LigatureKind k);

using AnchorTable = std::map<MarkPlacement, AnchorPoint>;

struct GlyphMetrics {
    Units advance = 0;
    Rect ink;
    AnchorTable anchors;
    Units max_extension = 0;  // Kashida capacity; 0 for non-stretchable glyphs
    MassClass mass = MassClass::Light;
    std::optional<std::string> path;  // SVG path data, display only

    bool operator==(const GlyphMetrics&) const = default;
};

struct MarkGlyph {
    MarkPlacement attachment = MarkPlacement::Above;
    AnchorPoint anchor;
    Rect ink;
    std::map<SizeVariant, GlyphId> variants;  // elongatable marks only; Normal maps to itself
    std::optional<AnchorPoint> mark_anchor_above;
    std::optional<std::string> path;

    bool operator==(const MarkGlyph&) const = default;
};

struct LigatureEntry {
    std::vector<GlyphId> components;
    GlyphId glyph;
    std::vector<AnchorTable> component_anchors;  // one table per component
    LigatureKind kind = LigatureKind::Aesthetic;

    bool operator==(const LigatureEntry&) const = default;
};

struct SizeThresholds {
    Units medium = 200;
    Units large = 450;

    bool operator==(const SizeThresholds&) const = default;
};

struct GlueSpec {
    Units width = 0;
    Units stretch = 0;
    Units shrink = 0;

    bool operator==(const GlueSpec&) const = default;
};

/// Declarative stand-in for a smart font (schema "qalam-font/1").
///
/// Immutable once loaded. See docs/font-format.md for the file layout.
struct FontDescription {
    std::string id;
    Units units_per_em = 1000;
    SizeThresholds size_thresholds;
    GlueSpec glue{250, 125, 80};
    std::map<int, int> kashida_priority;  // stretch_class -> rank
    std::map<CodePoint, std::map<Form, GlyphId>> cmap;
    std::map<CodePoint, GlyphId> mark_cmap;
    std::map<GlyphId, GlyphMetrics, std::less<>> glyphs;
    std::map<GlyphId, MarkGlyph, std::less<>> marks;
    std::vector<LigatureEntry> ligatures;
    // Vertical clearance added to anchor positions, per base mass class and side.
    std::map<MassClass, std::map<MarkPlacement, Units>> mark_offsets;
    // Final-phase size variant of each elongatable mark, keyed by the mass class
    // of the last glyph of the word.
    std::map<GlyphId, std::map<MassClass, SizeVariant>> final_variants;
    std::vector<LookupRule> gsub;
    std::vector<LookupRule> gpos;

    const GlyphMetrics* glyph(std::string_view id) const;
    const MarkGlyph* mark(std::string_view id) const;
    const LigatureEntry* ligature(std::string_view glyph) const;
    bool is_mark(std::string_view id) const { return mark(id) != nullptr; }
    int kashida_rank(int stretch_class) const;
    Units mark_offset(MassClass mass, MarkPlacement side) const;

    bool operator==(const FontDescription&) const = default;
};

// Throws Error{Parse|Schema|Ref|Range}.
FontDescription load_font(std::string_view source);
// Throws Error{Io} in addition to the load_font errors.
FontDescription load_font_file(const std::filesystem::path& path);

// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize(const FontDescription& font);

// Throws Error{NoGlyph}.
GlyphId glyph_for(const FontDescription& font, CodePoint letter, Form form);

// Mass classes suggested by ink-area terciles over all base glyphs.
std::map<GlyphId, MassClass> suggested_mass_classes(const FontDescription& font);

std::vector<Diagnostic> lint_font(const FontDescription& font, const TextModel& model = TextModel::builtin());

}  // namespace qalam

#endif  // QALAM_FONT_H
