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

#include "qalam/diacritics.h"

#include <algorithm>
#include <map>
#include <optional>

#include "qalam/error.h"

namespace qalam {

namespace {

struct Unit {
    std::size_t owner = 0;
    std::size_t component = 0;
    bool operator==(const Unit&) const = default;
};

std::size_t component_count(const ShapedWord& word, const FontDescription& font, std::size_t owner) {
    const LigatureEntry* lig = font.ligature(word.glyphs[owner].glyph);
    return lig ? lig->components.size() : 1;
}

std::vector<Unit> units_of(const ShapedWord& word, const FontDescription& font) {
    std::vector<Unit> out;
    for (std::size_t b : word.base_indices()) {
        const std::size_t n = component_count(word, font, b);
        for (std::size_t c = 0; c < n; ++c) out.push_back({b, c});
    }
    return out;
}

std::size_t unit_position(const std::vector<Unit>& units, std::size_t owner, std::size_t component) {
    for (std::size_t u = 0; u < units.size(); ++u) {
        if (units[u].owner == owner && units[u].component == component) return u;
    }
    // Components past the end of a ligature fold into its last unit.
    for (std::size_t u = units.size(); u > 0; --u) {
        if (units[u - 1].owner == owner) return u - 1;
    }
    return 0;
}

bool elongatable(const FontDescription& font, const GlyphId& nominal) {
    const MarkGlyph* m = font.mark(nominal);
    return m && !m->variants.empty();
}

const GlyphId* shadda_glyph(const FontDescription& font) {
    auto it = font.mark_cmap.find(kShadda);
    return it == font.mark_cmap.end() ? nullptr : &it->second;
}

Units union_length(std::vector<Span> spans) {
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.begin < b.begin; });
    Units total = 0;
    Units cur_begin = 0;
    Units cur_end = 0;
    bool open = false;
    for (const Span& s : spans) {
        if (s.length() == 0) continue;
        if (open && s.begin <= cur_end) {
            cur_end = std::max(cur_end, s.end);
            continue;
        }
        if (open) total += cur_end - cur_begin;
        cur_begin = s.begin;
        cur_end = s.end;
        open = true;
    }
    if (open) total += cur_end - cur_begin;
    return total;
}

Span horizontal(const Rect& r) { return {r.x_min, r.x_max}; }

Units overlap(const Span& a, const Span& b) { return std::max<Units>(0, std::min(a.end, b.end) - std::max(a.begin, b.begin)); }

class Placer {
public:
    Placer(const ShapedWord& word, const FontDescription& font, const DiacriticParams& params)
        : mWord(word), mFont(font), mParams(params), mUnits(units_of(word, font)) {}

    std::vector<PlacedMark>& marks() { return mMarks; }
    std::vector<Diagnostic>& diagnostics() { return mDiagnostics; }
    const std::vector<Unit>& units() const { return mUnits; }

    void set_marks(std::vector<PlacedMark> marks) { mMarks = std::move(marks); }

    std::size_t unit_of(const PlacedMark& m) const { return unit_position(mUnits, m.owner, m.component); }

    Units gap(std::size_t unit, MarkPlacement side) const {
        const Unit& u = mUnits[unit];
        const Span span = unit_span(mWord, mFont, u.owner, u.component);
        std::vector<Span> covered;
        for (const PlacedMark& m : mMarks) {
            if (m.side != side) continue;
            const std::size_t mu = unit_of(m);
            if (mu + 1 != unit && mu != unit + 1) continue;
            const Span s = horizontal(mark_ink(mWord, mFont, m));
            const Span clipped{std::max(s.begin, span.begin), std::min(s.end, span.end)};
            if (clipped.begin < clipped.end) covered.push_back(clipped);
        }
        return std::max<Units>(0, span.length() - union_length(covered));
    }

    MassClass mass_of(std::size_t owner) const { return mFont.glyph(mWord.glyphs[owner].glyph)->mass; }

    // Default vertical position of a mark glyph at its unit, mass clearance
    // included.
    Point anchored(const PlacedMark& m, const GlyphId& glyph) const {
        const MarkGlyph& mg = *mFont.mark(glyph);
        const PlacedGlyph& owner = mWord.glyphs[m.owner];
        const LigatureEntry* lig = mFont.ligature(owner.glyph);
        Point at = lig ? attach_mark_to_ligature({0, 0}, *lig, m.component, mg, owner.elongation)
                       : attach_mark_to_base({0, 0}, *mFont.glyph(owner.glyph), mg, owner.elongation);
        at.y += mFont.mark_offset(mass_of(m.owner), m.side);
        return at;
    }

    // Phase placement at default size: mass-table clearance on every mark of
    // the unit. Stacked marks move with the mark below them.
    void place_unit(std::size_t unit) {
        for (PlacedMark& m : mMarks) {
            if (unit_of(m) == unit) m.y += mFont.mark_offset(mass_of(m.owner), m.side);
        }
    }

    const PlacedMark* lower_of(const PlacedMark& m) const {
        const auto& att = mWord.glyphs[m.index].attached_to;
        if (!att || !att->to_mark) return nullptr;
        for (const PlacedMark& o : mMarks) {
            if (o.index == att->index) return &o;
        }
        return nullptr;
    }

    // Swaps in a size variant and recenters the mark over its unit.
    void resize(PlacedMark& m, SizeVariant v) {
        const MarkGlyph& nominal = *mFont.mark(m.mark);
        GlyphId glyph = m.mark;
        if (v != SizeVariant::Normal) {
            auto it = nominal.variants.find(v);
            if (it == nominal.variants.end()) {
                throw Error(ErrorCode::MissingVariant, m.mark + " has no '" + std::string(to_string(v)) + "' variant");
            }
            glyph = it->second;
        }
        const MarkGlyph& mg = *mFont.mark(glyph);
        m.glyph = glyph;
        m.variant = v;
        if (const PlacedMark* lower = lower_of(m)) {
            const Point at = attach_mark_to_mark({lower->x, lower->y}, *mFont.mark(lower->glyph), mg);
            m.x = at.x;
            m.y = at.y;
            return;
        }
        const Unit& u = mUnits[unit_of(m)];
        const Span span = unit_span(mWord, mFont, u.owner, u.component);
        const Units mid = (span.begin + span.end) / 2;
        const PlacedGlyph& owner = mWord.glyphs[m.owner];
        const Units pen_end = owner.x_offset + owner.advance + owner.elongation;
        m.x = pen_end - mid - (mg.ink.x_min + mg.ink.x_max) / 2;
        m.y = anchored(m, glyph).y;
    }

    std::vector<std::size_t> group(std::size_t unit, MarkPlacement side) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < mMarks.size(); ++i) {
            if (mMarks[i].side == side && unit_of(mMarks[i]) == unit) out.push_back(i);
        }
        return out;
    }

    Span group_span(const std::vector<std::size_t>& g) const {
        Span s{0, 0};
        bool first = true;
        for (std::size_t i : g) {
            const Span h = horizontal(mark_ink(mWord, mFont, mMarks[i]));
            if (first) {
                s = h;
                first = false;
            } else {
                s = {std::min(s.begin, h.begin), std::max(s.end, h.end)};
            }
        }
        return s;
    }

    bool pinned(const std::vector<std::size_t>& g) const {
        return std::any_of(g.begin(), g.end(), [&](std::size_t i) { return mMarks[i].pinned; });
    }

    void report(std::size_t glyph, std::string message) {
        Diagnostic d{Severity::Warn, "Unresolvable", std::move(message), std::nullopt, glyph};
        if (std::find(mDiagnostics.begin(), mDiagnostics.end(), d) == mDiagnostics.end()) mDiagnostics.push_back(std::move(d));
    }

    // Separates group b (later unit) from group a (earlier unit).
    void separate(std::size_t ua, std::size_t ub, MarkPlacement side) {
        const auto a = group(ua, side);
        const auto b = group(ub, side);
        if (a.empty() || b.empty()) return;
        const Units ov = overlap(group_span(a), group_span(b));
        if (ov <= 0) return;
        const Units shift = ov + mParams.gap_epsilon;
        const bool pin_a = pinned(a);
        const bool pin_b = pinned(b);
        const std::size_t where = mMarks[b.front()].index;
        if (pin_a && pin_b) {
            report(where, "pinned marks overlap by " + std::to_string(ov));
            return;
        }
        // Logical +shift moves the later group forward; glyph x runs the other way.
        const auto& moved = pin_b ? a : b;
        const std::size_t moved_unit = pin_b ? ua : ub;
        const Unit& u = mUnits[moved_unit];
        if (shift > unit_span(mWord, mFont, u.owner, u.component).length()) {
            report(where, "shift of " + std::to_string(shift) + " exceeds the owner span");
            return;
        }
        for (std::size_t i : moved) mMarks[i].x += pin_b ? shift : -shift;
    }

    // Nearest earlier unit with a group on `side`.
    std::optional<std::size_t> previous_group(std::size_t unit, MarkPlacement side) const {
        for (std::size_t u = unit; u > 0; --u) {
            if (!group(u - 1, side).empty()) return u - 1;
        }
        return std::nullopt;
    }

    void separate_from_previous(std::size_t unit) {
        for (MarkPlacement side : {MarkPlacement::Above, MarkPlacement::Below}) {
            if (auto p = previous_group(unit, side)) separate(*p, unit, side);
        }
    }

    void verify() {
        for (MarkPlacement side : {MarkPlacement::Above, MarkPlacement::Below}) {
            std::optional<std::size_t> prev;
            for (std::size_t u = 0; u < mUnits.size(); ++u) {
                const auto g = group(u, side);
                if (g.empty()) continue;
                if (prev && overlap(group_span(group(*prev, side)), group_span(g)) > 0) {
                    report(mMarks[g.front()].index, "marks still overlap");
                }
                prev = u;
            }
        }
    }

private:
    const ShapedWord& mWord;
    const FontDescription& mFont;
    const DiacriticParams& mParams;
    std::vector<Unit> mUnits;
    std::vector<PlacedMark> mMarks;
    std::vector<Diagnostic> mDiagnostics;
};

ShapedWord with_default_marks(const ShapedWord& word, const FontDescription& font) {
    ShapedWord w = word;
    for (auto& g : w.glyphs) {
        if (g.is_mark) g.glyph = nominal_mark(font, g.glyph);
    }
    relayout(w, font);
    return w;
}

}  // namespace

const GlyphId& nominal_mark(const FontDescription& font, const GlyphId& glyph) {
    for (const auto& [id, m] : font.marks) {
        for (const auto& [v, target] : m.variants) {
            if (target == glyph) return id;
        }
    }
    return glyph;
}

Span unit_span(const ShapedWord& word, const FontDescription& font, std::size_t owner, std::size_t component) {
    const Rect ink = logical_ink(font, word.glyphs, owner);
    const Units e = word.glyphs[owner].elongation;
    const Units n = static_cast<Units>(component_count(word, font, owner));
    const Units c = static_cast<Units>(std::min<std::size_t>(component, n - 1));
    const Units body = ink.width() - e;
    Span s{ink.x_min + body * c / n, ink.x_min + body * (c + 1) / n};
    if (c == n - 1) s.end += e;
    return s;
}

Rect mark_ink(const ShapedWord& word, const FontDescription& font, const PlacedMark& mark) {
    const Rect& ink = font.mark(mark.glyph)->ink;
    const PlacedGlyph& o = word.glyphs[mark.owner];
    return {logical_x(word.glyphs, mark.owner, mark.x + ink.x_max), o.y_offset + mark.y + ink.y_min,
            logical_x(word.glyphs, mark.owner, mark.x + ink.x_min), o.y_offset + mark.y + ink.y_max};
}

std::vector<PlacedMark> current_marks(const ShapedWord& word, const FontDescription& font) {
    const GlyphId* shadda = shadda_glyph(font);
    std::vector<PlacedMark> out;
    for (std::size_t i = 0; i < word.glyphs.size(); ++i) {
        const PlacedGlyph& g = word.glyphs[i];
        if (!g.is_mark) continue;
        PlacedMark m;
        m.glyph = g.glyph;
        m.mark = nominal_mark(font, g.glyph);
        for (const auto& [v, target] : font.mark(m.mark)->variants) {
            if (target == g.glyph) m.variant = v;
        }
        m.x = g.x_offset;
        m.y = g.y_offset;
        m.index = i;
        m.owner = g.owner;
        m.component = g.component;
        m.side = font.mark(g.glyph)->attachment;
        const bool is_shadda = shadda && m.mark == *shadda;
        const bool on_shadda = g.attached_to && g.attached_to->to_mark && shadda &&
                               nominal_mark(font, word.glyphs[g.attached_to->index].glyph) == *shadda;
        m.pinned = is_shadda || on_shadda;
        out.push_back(std::move(m));
    }
    return out;
}

GapMeasure measure_gap(const ShapedWord& word, const FontDescription& font, std::size_t owner, MarkPlacement side,
                       std::size_t component) {
    const DiacriticParams params;
    Placer p(word, font, params);
    p.set_marks(current_marks(word, font));
    return {owner, p.gap(unit_position(p.units(), owner, component), side)};
}

SizeVariant select_size_variant(Units gap, const SizeThresholds& thresholds) {
    if (gap >= thresholds.large) return SizeVariant::Large;
    if (gap >= thresholds.medium) return SizeVariant::Medium;
    return SizeVariant::Normal;
}

MarkLayout place_diacritics(const ShapedWord& word, const FontDescription& font, const DiacriticParams& params) {
    const ShapedWord w = with_default_marks(word, font);
    Placer p(w, font, params);
    p.set_marks(current_marks(w, font));
    const std::size_t n = p.units().size();

    auto resize_unit = [&](std::size_t unit, auto&& choose) {
        for (PlacedMark& m : p.marks()) {
            if (p.unit_of(m) == unit && elongatable(font, m.mark)) p.resize(m, choose(m));
        }
    };

    for (std::size_t u = 0; u < n; ++u) {
        p.place_unit(u);
        if (u == 0) continue;
        resize_unit(u - 1, [&](const PlacedMark& m) { return select_size_variant(p.gap(u - 1, m.side), font.size_thresholds); });
        if (u >= 2) {
            for (MarkPlacement side : {MarkPlacement::Above, MarkPlacement::Below}) {
                if (auto prev = p.previous_group(u - 1, side)) p.separate(*prev, u - 1, side);
            }
        }
        p.separate_from_previous(u);
    }

    if (n > 0) {
        const std::size_t last = n - 1;
        const MassClass mass = p.mass_of(p.units()[last].owner);
        resize_unit(last, [&](const PlacedMark& m) {
            auto it = font.final_variants.find(m.mark);
            if (it == font.final_variants.end() || !it->second.count(mass)) {
                throw Error(ErrorCode::MissingVariant, m.mark + " has no final variant for mass '" +
                                                               std::string(to_string(mass)) + "'");
            }
            return it->second.at(mass);
        });
        p.separate_from_previous(last);
    }

    // Placeholder hook for aesthetic marks: report room left above bare units.
    for (std::size_t u = 0; u < n; ++u) {
        if (!p.group(u, MarkPlacement::Above).empty()) continue;
        const Units g = p.gap(u, MarkPlacement::Above);
        if (g >= font.size_thresholds.medium) {
            p.diagnostics().push_back(Diagnostic{Severity::Info, "SpaceAvailable",
                                                 std::to_string(g) + " units free above", std::nullopt,
                                                 p.units()[u].owner});
        }
    }
    p.verify();
    return {std::move(p.marks()), std::move(p.diagnostics())};
}

MarkLayout resolve_collisions(std::vector<PlacedMark> marks, const ShapedWord& word, const FontDescription& font,
                              const DiacriticParams& params) {
    Placer p(word, font, params);
    p.set_marks(std::move(marks));
    for (std::size_t u = 1; u < p.units().size(); ++u) p.separate_from_previous(u);
    p.verify();
    return {std::move(p.marks()), std::move(p.diagnostics())};
}

void apply_marks(ShapedWord& word, const std::vector<PlacedMark>& marks) {
    for (const PlacedMark& m : marks) {
        PlacedGlyph& g = word.glyphs.at(m.index);
        g.glyph = m.glyph;
        g.x_offset = m.x;
        g.y_offset = m.y;
    }
}

}  // namespace qalam
