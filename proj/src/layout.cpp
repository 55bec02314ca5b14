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

#include "qalam/layout.h"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qalam/diacritics.h"
#include "qalam/error.h"

namespace qalam {

namespace {

using nlohmann::json;

constexpr std::string_view kSchema = "qalam-layout/1";

json rect_json(const Rect& r) { return json::array({r.x_min, r.y_min, r.x_max, r.y_max}); }

Rect parse_rect(const json& j) {
    if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::Schema, "ink must be [x_min, y_min, x_max, y_max]");
    return {j[0].get<Units>(), j[1].get<Units>(), j[2].get<Units>(), j[3].get<Units>()};
}

json demerits_json(const std::optional<Demerits>& d) {
    if (!d) return nullptr;
    if (*d == kInfinity) return "inf";
    return *d;
}

std::optional<Demerits> parse_demerits(const json& j) {
    if (j.is_null()) return std::nullopt;
    if (j.is_string() && j.get<std::string>() == "inf") return kInfinity;
    return j.get<Demerits>();
}

json diagnostic_json(const Diagnostic& d) {
    json j{{"severity", to_string(d.severity)}, {"code", d.code}, {"message", d.message}};
    j["word"] = d.word ? json(*d.word) : json(nullptr);
    j["glyph"] = d.glyph ? json(*d.glyph) : json(nullptr);
    return j;
}

Diagnostic parse_diagnostic(const json& j) {
    Diagnostic d;
    const std::string s = j.at("severity").get<std::string>();
    if (s == "error") d.severity = Severity::Error;
    else if (s == "warn") d.severity = Severity::Warn;
    else if (s == "info") d.severity = Severity::Info;
    else throw Error(ErrorCode::Schema, "unknown severity '" + s + "'");
    d.code = j.at("code").get<std::string>();
    d.message = j.at("message").get<std::string>();
    if (j.contains("word") && !j["word"].is_null()) d.word = j["word"].get<std::size_t>();
    if (j.contains("glyph") && !j["glyph"].is_null()) d.glyph = j["glyph"].get<std::size_t>();
    return d;
}

void append_word(LineRecord& line, const ShapedWord& word, std::size_t index, Units x, const FontDescription& font) {
    const std::vector<PlacedMark> marks = current_marks(word, font);
    for (std::size_t i = 0; i < word.glyphs.size(); ++i) {
        const PlacedGlyph& g = word.glyphs[i];
        if (g.is_mark) continue;
        GlyphRecord r;
        r.glyph = g.glyph;
        r.word = index;
        r.x = x + g.x_offset;
        r.y = g.y_offset;
        r.advance = g.advance;
        r.elongation = g.elongation;
        r.ink = logical_ink(font, word.glyphs, i).translated({x, 0});
        for (const PlacedMark& m : marks) {
            if (m.owner != i) continue;
            r.marks.push_back(MarkRecord{m.mark, m.glyph, m.variant, m.x, m.y, mark_ink(word, font, m).translated({x, 0})});
        }
        line.glyphs.push_back(std::move(r));
    }
    line.words.push_back(WordRecord{index, word.variant, x, word.natural_width()});
}

void escape_into(std::ostringstream& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
            case '&': out << "&amp;"; break;
            case '<': out << "&lt;"; break;
            case '>': out << "&gt;"; break;
            case '"': out << "&quot;"; break;
            default: out << c;
        }
    }
}

}  // namespace

LayoutDocument layout_words(std::span<const ShapedWord> words, const FontDescription& font,
                            std::vector<Diagnostic> diagnostics) {
    LayoutDocument doc;
    doc.font_id = font.id;
    doc.units_per_em = font.units_per_em;
    doc.diagnostics = std::move(diagnostics);
    if (words.empty()) return doc;
    LineRecord line;
    Units x = 0;
    for (std::size_t k = 0; k < words.size(); ++k) {
        if (k > 0) {
            line.glue.push_back(font.glue.width);
            x += font.glue.width;
        }
        append_word(line, words[k], k, x, font);
        x += words[k].natural_width();
    }
    line.width = x;
    doc.lines.push_back(std::move(line));
    return doc;
}

LayoutDocument layout_paragraph(const JustifiedParagraph& paragraph, const FontDescription& font, Units measure) {
    LayoutDocument doc;
    doc.font_id = font.id;
    doc.units_per_em = font.units_per_em;
    doc.measure = measure;
    doc.total_demerits = paragraph.total_demerits;
    doc.diagnostics = paragraph.diagnostics;
    for (const JustifiedLine& jl : paragraph.lines) {
        LineRecord line;
        line.width = jl.line.width;
        line.glue = jl.line.glue;
        line.kashida = jl.line.kashida_intervals;
        line.demerits = jl.line.demerits;
        for (std::size_t k = 0; k < jl.words.size(); ++k) {
            append_word(line, jl.words[k], jl.line.words[k].word, jl.line.words[k].x, font);
        }
        doc.lines.push_back(std::move(line));
    }
    return doc;
}

std::string to_json(const LayoutDocument& doc) {
    json j;
    j["schema"] = kSchema;
    j["direction"] = "rtl";
    j["font_id"] = doc.font_id;
    j["units_per_em"] = doc.units_per_em;
    j["measure"] = doc.measure ? json(*doc.measure) : json(nullptr);
    j["total_demerits"] = demerits_json(doc.total_demerits);
    j["lines"] = json::array();
    for (const LineRecord& line : doc.lines) {
        json l;
        l["width"] = line.width;
        l["glue"] = line.glue;
        l["demerits"] = demerits_json(line.demerits);
        l["kashida"] = json::array();
        for (const Span& s : line.kashida) l["kashida"].push_back(json::array({s.begin, s.end}));
        l["words"] = json::array();
        for (const WordRecord& w : line.words) {
            l["words"].push_back({{"index", w.index}, {"variant", w.variant}, {"x", w.x}, {"width", w.width}});
        }
        l["glyphs"] = json::array();
        for (const GlyphRecord& g : line.glyphs) {
            json gj{{"glyph", g.glyph},           {"word", g.word}, {"x", g.x}, {"y", g.y}, {"advance", g.advance},
                    {"elongation", g.elongation}, {"ink", rect_json(g.ink)}};
            gj["marks"] = json::array();
            for (const MarkRecord& m : g.marks) {
                gj["marks"].push_back({{"mark", m.mark},
                                       {"glyph", m.glyph},
                                       {"variant", to_string(m.variant)},
                                       {"dx", m.dx},
                                       {"dy", m.dy},
                                       {"ink", rect_json(m.ink)}});
            }
            l["glyphs"].push_back(std::move(gj));
        }
        j["lines"].push_back(std::move(l));
    }
    j["diagnostics"] = json::array();
    for (const Diagnostic& d : doc.diagnostics) j["diagnostics"].push_back(diagnostic_json(d));
    return j.dump(2) + "\n";
}

LayoutDocument layout_from_json(std::string_view source) {
    json j;
    try {
        j = json::parse(source);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    try {
        if (!j.is_object() || j.value("schema", "") != kSchema) throw Error(ErrorCode::Schema, "not a qalam-layout/1 document");
        if (j.at("direction") != "rtl") throw Error(ErrorCode::Schema, "direction must be rtl");
        LayoutDocument doc;
        doc.font_id = j.at("font_id").get<std::string>();
        doc.units_per_em = j.at("units_per_em").get<Units>();
        if (!j.at("measure").is_null()) doc.measure = j["measure"].get<Units>();
        doc.total_demerits = parse_demerits(j.at("total_demerits"));
        for (const auto& l : j.at("lines")) {
            LineRecord line;
            line.width = l.at("width").get<Units>();
            line.glue = l.at("glue").get<std::vector<Units>>();
            line.demerits = parse_demerits(l.at("demerits"));
            for (const auto& s : l.at("kashida")) line.kashida.push_back({s.at(0).get<Units>(), s.at(1).get<Units>()});
            for (const auto& w : l.at("words")) {
                line.words.push_back(WordRecord{w.at("index").get<std::size_t>(), w.at("variant").get<std::string>(),
                                                w.at("x").get<Units>(), w.at("width").get<Units>()});
            }
            for (const auto& g : l.at("glyphs")) {
                GlyphRecord r;
                r.glyph = g.at("glyph").get<std::string>();
                r.word = g.at("word").get<std::size_t>();
                r.x = g.at("x").get<Units>();
                r.y = g.at("y").get<Units>();
                r.advance = g.at("advance").get<Units>();
                r.elongation = g.at("elongation").get<Units>();
                r.ink = parse_rect(g.at("ink"));
                for (const auto& m : g.at("marks")) {
                    auto v = size_variant_from(m.at("variant").get<std::string>());
                    if (!v) throw Error(ErrorCode::Schema, "unknown size variant");
                    r.marks.push_back(MarkRecord{m.at("mark").get<std::string>(), m.at("glyph").get<std::string>(), *v,
                                                 m.at("dx").get<Units>(), m.at("dy").get<Units>(), parse_rect(m.at("ink"))});
                }
                line.glyphs.push_back(std::move(r));
            }
            doc.lines.push_back(std::move(line));
        }
        for (const auto& d : j.at("diagnostics")) doc.diagnostics.push_back(parse_diagnostic(d));
        return doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Schema, e.what());
    }
}

std::string diagnostics_json(std::span<const Diagnostic> diagnostics) {
    json j = json::array();
    for (const Diagnostic& d : diagnostics) j.push_back(diagnostic_json(d));
    return j.dump(2) + "\n";
}

std::string render_svg(const LayoutDocument& doc) {
    constexpr Units kLineHeight = 1800;
    constexpr Units kAscent = 1100;
    constexpr Units kMargin = 200;
    Units width = doc.measure.value_or(0);
    for (const LineRecord& l : doc.lines) width = std::max(width, l.width);
    width = std::max<Units>(width, 1);
    const Units height = std::max<Units>(1, static_cast<Units>(doc.lines.size())) * kLineHeight;

    std::ostringstream out;
    auto rect = [&](const char* cls, const Rect& r, Units baseline, std::string_view title) {
        out << "    <rect class=\"" << cls << "\" x=\"" << width - r.x_max << "\" y=\"" << baseline - r.y_max
            << "\" width=\"" << r.width() << "\" height=\"" << r.height() << "\"><title>";
        escape_into(out, title);
        out << "</title></rect>\n";
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -kMargin << " 0 " << width + 2 * kMargin << " "
        << height << "\" data-font=\"";
    escape_into(out, doc.font_id);
    out << "\">\n";
    out << "  <style>.glyph{fill:#33415c;fill-opacity:.35;stroke:#33415c}.variant-normal{fill:#2a9d8f}"
           ".variant-medium{fill:#e9c46a}.variant-large{fill:#e76f51}.guide{stroke:#999;stroke-dasharray:40 20}</style>\n";
    out << "  <g class=\"guides\">\n";
    out << "    <line class=\"guide\" x1=\"0\" y1=\"0\" x2=\"0\" y2=\"" << height << "\"/>\n";
    out << "    <line class=\"guide\" x1=\"" << width << "\" y1=\"0\" x2=\"" << width << "\" y2=\"" << height << "\"/>\n";
    out << "  </g>\n";
    for (std::size_t l = 0; l < doc.lines.size(); ++l) {
        const Units baseline = static_cast<Units>(l) * kLineHeight + kAscent;
        out << "  <g class=\"line\" data-line=\"" << l << "\">\n";
        for (const GlyphRecord& g : doc.lines[l].glyphs) {
            rect("glyph", g.ink, baseline, g.glyph);
            for (const MarkRecord& m : g.marks) {
                const std::string cls = "mark variant-" + std::string(to_string(m.variant));
                rect(cls.c_str(), m.ink, baseline, m.glyph);
            }
        }
        out << "  </g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace qalam
