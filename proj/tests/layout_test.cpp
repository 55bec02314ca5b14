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

#include <gtest/gtest.h>

#include <regex>

#include "qalam/error.h"
#include "qalam/layout.h"
#include "support/test_support.h"

namespace qalam {
namespace {

using test::demo_font;

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

LayoutDocument shaped_doc(const std::string& text) {
    auto words = test::shape_text(text, demo_font());
    for (auto& w : words) apply_marks(w, place_diacritics(w, demo_font()).marks);
    return layout_words(words, demo_font());
}

LayoutDocument justified_doc(Units measure) {
    const auto words = test::shape_text(test::read_text(test::source_path("data/corpus/paragraph.txt")), demo_font());
    JustifyOptions o;
    o.measure = measure;
    return layout_paragraph(justify_paragraph(words, demo_font(), o), demo_font(), measure);
}

ErrorCode parse_error(const std::string& text) {
    try {
        layout_from_json(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "parsed";
    return ErrorCode::Io;
}

TEST(LayoutJson, RoundTrips) {
    for (const LayoutDocument& doc : {shaped_doc("كَتَبَ الطَّالِبُ"), justified_doc(4000), justified_doc(7200)}) {
        const std::string json = to_json(doc);
        EXPECT_EQ(layout_from_json(json), doc);
        EXPECT_EQ(to_json(layout_from_json(json)), json);
    }
}

TEST(LayoutJson, InfiniteDemeritsSerializeAsInf) {
    LayoutDocument doc;
    doc.font_id = "x";
    doc.total_demerits = kInfinity;
    const std::string json = to_json(doc);
    EXPECT_NE(json.find("\"total_demerits\": \"inf\""), std::string::npos);
    EXPECT_EQ(layout_from_json(json).total_demerits, kInfinity);
}

TEST(LayoutJson, RejectsMalformedDocuments) {
    EXPECT_EQ(parse_error("{"), ErrorCode::Parse);
    EXPECT_EQ(parse_error("[]"), ErrorCode::Schema);
    std::string json = to_json(shaped_doc("بَ"));
    EXPECT_EQ(parse_error(std::regex_replace(json, std::regex("qalam-layout/1"), "qalam-layout/2")), ErrorCode::Schema);
    EXPECT_EQ(parse_error(std::regex_replace(json, std::regex("\"medium\""), "\"huge\"")), ErrorCode::Schema);
    EXPECT_EQ(parse_error(std::regex_replace(json, std::regex("\"glyphs\""), "\"glyfs\"")), ErrorCode::Schema);
}

TEST(LayoutJson, GlyphRecordsCarryLineCoordinates) {
    const LayoutDocument doc = justified_doc(7200);
    for (const LineRecord& line : doc.lines) {
        for (const GlyphRecord& g : line.glyphs) {
            const WordRecord* word = nullptr;
            for (const auto& w : line.words) {
                if (w.index == g.word) word = &w;
            }
            ASSERT_NE(word, nullptr);
            EXPECT_GE(g.x, word->x);
            EXPECT_LE(g.x + g.advance + g.elongation, word->x + word->width);
        }
    }
}

TEST(Svg, OneBaseOneMark) {
    const std::string svg = render_svg(shaped_doc("بَ"));
    EXPECT_EQ(count(svg, "<rect "), 2u);
    EXPECT_EQ(count(svg, "class=\"guide\""), 2u);
    EXPECT_EQ(count(svg, "class=\"glyph\""), 1u);
    EXPECT_EQ(count(svg, "class=\"mark variant-"), 1u);
}

TEST(Svg, MediumFathaGetsItsClass) {
    auto words = test::shape_text("بَم", demo_font());
    words[0].glyphs[0].elongation = 250;
    relayout(words[0], demo_font());
    apply_marks(words[0], place_diacritics(words[0], demo_font()).marks);
    const std::string svg = render_svg(layout_words(words, demo_font()));
    EXPECT_EQ(count(svg, "class=\"mark variant-medium\""), 1u);
}

TEST(Svg, DeterministicAndMirrored) {
    const LayoutDocument doc = justified_doc(7200);
    const std::string a = render_svg(doc);
    EXPECT_EQ(a, render_svg(layout_from_json(to_json(doc))));
    // Reading order runs right to left: the first glyph sits at the right edge.
    const GlyphRecord& first = doc.lines[0].glyphs[0];
    const std::string x = "x=\"" + std::to_string(7200 - first.ink.x_max) + "\"";
    EXPECT_NE(a.find(x), std::string::npos);
    EXPECT_NE(a.find("viewBox=\"-200 0 7600 "), std::string::npos);
}

}  // namespace
}  // namespace qalam
