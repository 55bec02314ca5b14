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

#ifndef QALAM_LAYOUT_H
#define QALAM_LAYOUT_H

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qalam/diagnostic.h"
#include "qalam/font.h"
#include "qalam/justifier.h"
#include "qalam/shaper.h"

namespace qalam {

struct MarkRecord {
    GlyphId mark;
    GlyphId glyph;
    SizeVariant variant = SizeVariant::Normal;
    Units dx = 0;  // origin relative to the base origin, glyph coordinates
    Units dy = 0;
    Rect ink;      // line frame

    bool operator==(const MarkRecord&) const = default;
};

struct GlyphRecord {
    GlyphId glyph;
    std::size_t word = 0;
    Units x = 0;  // logical pen position in the line
    Units y = 0;
    Units advance = 0;
    Units elongation = 0;
    Rect ink;     // line frame
    std::vector<MarkRecord> marks;

    bool operator==(const GlyphRecord&) const = default;
};

struct WordRecord {
    std::size_t index = 0;
    std::string variant;
    Units x = 0;
    Units width = 0;

    bool operator==(const WordRecord&) const = default;
};

struct LineRecord {
    Units width = 0;
    std::vector<WordRecord> words;
    std::vector<Units> glue;
    std::vector<GlyphRecord> glyphs;
    std::vector<Span> kashida;
    std::optional<Demerits> demerits;

    bool operator==(const LineRecord&) const = default;
};

/// Serializable layout (schema "qalam-layout/1"). Coordinates are logical:
/// x grows in reading order and the renderer mirrors it for right-to-left.
struct LayoutDocument {
    std::string font_id;
    Units units_per_em = 1000;
    std::optional<Units> measure;
    std::vector<LineRecord> lines;
    std::optional<Demerits> total_demerits;
    std::vector<Diagnostic> diagnostics;

    bool operator==(const LayoutDocument&) const = default;
};

// Words set on a single line at natural width.
LayoutDocument layout_words(std::span<const ShapedWord> words, const FontDescription& font,
                            std::vector<Diagnostic> diagnostics = {});
LayoutDocument layout_paragraph(const JustifiedParagraph& paragraph, const FontDescription& font, Units measure);

std::string to_json(const LayoutDocument& doc);
// Throws Error{Parse|Schema}.
LayoutDocument layout_from_json(std::string_view source);

std::string diagnostics_json(std::span<const Diagnostic> diagnostics);

// Deterministic SVG proof of a layout.
std::string render_svg(const LayoutDocument& doc);

}  // namespace qalam

#endif  // QALAM_LAYOUT_H
