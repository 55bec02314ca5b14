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

#include "qalam/lookup.h"

#include <algorithm>

#include "qalam/error.h"

namespace qalam {

namespace {

bool enabled(const LookupRule& rule, const FeatureSet& features) {
    return features.find(rule.feature) != features.end();
}

template <typename Map>
const typename Map::mapped_type* find_in(const Map& map, const GlyphId& key) {
    auto it = map.find(key);
    return it == map.end() ? nullptr : &it->second;
}

std::optional<std::size_t> prev_base(const std::vector<RunItem>& run, std::size_t i) {
    while (i > 0) {
        --i;
        if (!run[i].is_mark) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> next_base(const std::vector<RunItem>& run, std::size_t i) {
    for (++i; i < run.size(); ++i) {
        if (!run[i].is_mark) return i;
    }
    return std::nullopt;
}

// Index of the last matched component, or nullopt.
std::optional<std::size_t> match_ligature(const std::vector<RunItem>& run, std::size_t i, const LigatureSpec& spec,
                                          bool ignore_marks) {
    if (run[i].is_mark || run[i].glyph != spec.components[0]) return std::nullopt;
    std::size_t j = i;
    for (std::size_t k = 1; k < spec.components.size(); ++k) {
        ++j;
        while (ignore_marks && j < run.size() && run[j].is_mark) ++j;
        if (j >= run.size() || run[j].is_mark || run[j].glyph != spec.components[k]) return std::nullopt;
    }
    return j;
}

void apply_ligature(const LigatureSub& sub, bool ignore_marks, const CoverageTable& coverage, std::vector<RunItem>& run) {
    for (std::size_t i = 0; i < run.size(); ++i) {
        if (!coverage.contains(run[i].glyph)) continue;
        for (const auto& spec : sub.ligatures) {
            auto last = match_ligature(run, i, spec, ignore_marks);
            if (!last) continue;
            RunItem lig{spec.glyph, false, {}};
            std::vector<RunItem> skipped;
            for (std::size_t j = i; j <= *last; ++j) {
                if (run[j].is_mark) {
                    skipped.push_back(run[j]);
                } else {
                    lig.clusters.insert(lig.clusters.end(), run[j].clusters.begin(), run[j].clusters.end());
                }
            }
            std::vector<RunItem> replacement{std::move(lig)};
            replacement.insert(replacement.end(), skipped.begin(), skipped.end());
            run.erase(run.begin() + static_cast<std::ptrdiff_t>(i), run.begin() + static_cast<std::ptrdiff_t>(*last) + 1);
            run.insert(run.begin() + static_cast<std::ptrdiff_t>(i), replacement.begin(), replacement.end());
            break;
        }
    }
}

void apply_rule(const LookupRule& rule, std::vector<RunItem>& run) {
    if (const auto* lig = std::get_if<LigatureSub>(&rule.payload)) {
        apply_ligature(*lig, rule.ignore_marks, rule.coverage, run);
        return;
    }
    for (std::size_t i = 0; i < run.size(); ++i) {
        RunItem& item = run[i];
        if (!rule.coverage.contains(item.glyph)) continue;
        if (const auto* p = std::get_if<SingleSub>(&rule.payload)) {
            if (const auto* to = find_in(p->map, item.glyph)) item.glyph = *to;
        } else if (const auto* p = std::get_if<AlternateSub>(&rule.payload)) {
            if (const auto* alts = find_in(p->alternates, item.glyph)) item.glyph = alts->front();
        } else if (const auto* p = std::get_if<ContextualSub>(&rule.payload)) {
            const auto* to = find_in(p->map, item.glyph);
            if (!to) continue;
            auto before = prev_base(run, i);
            auto after = next_base(run, i);
            const bool before_ok = p->before.empty() || (before && p->before.count(run[*before].glyph));
            const bool after_ok = p->after.empty() || (after && p->after.count(run[*after].glyph));
            if (before_ok && after_ok) item.glyph = *to;
        } else if (const auto* p = std::get_if<MultipleSub>(&rule.payload)) {
            const auto* seq = find_in(p->map, item.glyph);
            if (!seq || seq->empty()) continue;
            std::vector<RunItem> out;
            for (const auto& g : *seq) out.push_back(RunItem{g, item.is_mark, item.clusters});
            run.erase(run.begin() + static_cast<std::ptrdiff_t>(i));
            run.insert(run.begin() + static_cast<std::ptrdiff_t>(i), out.begin(), out.end());
            i += out.size() - 1;
        }
    }
}

const AnchorPoint& anchor_or_throw(const AnchorTable& anchors, MarkPlacement cls, const std::string& what) {
    auto it = anchors.find(cls);
    if (it == anchors.end()) {
        throw Error(ErrorCode::MissingAnchor, what + " has no '" + std::string(to_string(cls)) + "' anchor");
    }
    return it->second;
}

}  // namespace

std::vector<RunItem> apply_gsub(const FontDescription& /*font*/, std::span<const LookupRule> rules,
                                std::vector<RunItem> run, const FeatureSet& features) {
    for (const auto& rule : rules) {
        if (!is_substitution(rule.kind()) || !enabled(rule, features)) continue;
        apply_rule(rule, run);
    }
    return run;
}

std::vector<GlyphId> apply_gsub(const FontDescription& font, std::span<const LookupRule> rules,
                                std::span<const GlyphId> glyphs, const FeatureSet& features) {
    std::vector<RunItem> run;
    std::size_t cluster = 0;
    for (const auto& g : glyphs) {
        const bool mark = font.is_mark(g);
        if (!mark && !run.empty()) ++cluster;
        run.push_back(RunItem{g, mark, {cluster}});
    }
    std::vector<GlyphId> out;
    for (auto& item : apply_gsub(font, rules, std::move(run), features)) out.push_back(std::move(item.glyph));
    return out;
}

Point attach_mark_to_base(Point base_origin, const GlyphMetrics& base, const MarkGlyph& mark, Units elongation) {
    const AnchorPoint& a = anchor_or_throw(base.anchors, mark.attachment, "base glyph");
    return base_origin + Point{a.x + elongation / 2, a.y} - mark.anchor;
}

Point attach_mark_to_ligature(Point lig_origin, const LigatureEntry& lig, std::size_t component, const MarkGlyph& mark,
                              Units elongation) {
    if (component >= lig.component_anchors.size()) {
        throw Error(ErrorCode::BadComponent, lig.glyph + " has no component " + std::to_string(component));
    }
    const AnchorPoint& a = anchor_or_throw(lig.component_anchors[component], mark.attachment,
                                           lig.glyph + " component " + std::to_string(component));
    const Units ride = component + 1 == lig.component_anchors.size() ? elongation / 2 : 0;
    return lig_origin + Point{a.x + ride, a.y} - mark.anchor;
}

Point attach_mark_to_mark(Point lower_origin, const MarkGlyph& lower, const MarkGlyph& upper) {
    if (!lower.mark_anchor_above) throw Error(ErrorCode::MissingAnchor, "lower mark has no mark_anchor_above");
    return lower_origin + *lower.mark_anchor_above - upper.anchor;
}

std::vector<PlacedGlyph> placed_from_run(std::span<const RunItem> run) {
    std::vector<PlacedGlyph> out;
    std::optional<std::size_t> owner;
    for (const auto& item : run) {
        PlacedGlyph g;
        g.glyph = item.glyph;
        g.is_mark = item.is_mark;
        if (!item.is_mark) {
            owner = out.size();
        } else if (owner) {
            g.owner = *owner;
        }
        out.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!out[i].is_mark) continue;
        const auto& owner_clusters = run[out[i].owner].clusters;
        const auto& mine = run[i].clusters;
        if (mine.empty()) continue;
        auto it = std::find(owner_clusters.begin(), owner_clusters.end(), mine.front());
        out[i].component = it == owner_clusters.end() ? 0 : static_cast<std::size_t>(it - owner_clusters.begin());
    }
    return out;
}

void apply_gpos(const FontDescription& font, std::span<const LookupRule> rules, std::vector<PlacedGlyph>& glyphs,
                const FeatureSet& features) {
    std::vector<std::size_t> bases;
    std::vector<Units> dx(glyphs.size(), 0);
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
        PlacedGlyph& g = glyphs[i];
        g.x_offset = 0;
        g.y_offset = 0;
        if (g.is_mark) {
            g.advance = 0;
            continue;
        }
        const GlyphMetrics* m = font.glyph(g.glyph);
        if (!m) throw Error(ErrorCode::Ref, g.glyph);
        g.advance = m->advance;
        bases.push_back(i);
    }

    for (const auto& rule : rules) {
        if (!enabled(rule, features)) continue;
        if (const auto* p = std::get_if<SingleAdj>(&rule.payload)) {
            for (std::size_t b : bases) {
                if (!rule.coverage.contains(glyphs[b].glyph)) continue;
                if (const auto* v = find_in(p->values, glyphs[b].glyph)) {
                    dx[b] += v->dx;
                    glyphs[b].y_offset += v->dy;
                    glyphs[b].advance += v->advance;
                }
            }
        } else if (const auto* p = std::get_if<PairAdj>(&rule.payload)) {
            for (std::size_t k = 0; k + 1 < bases.size(); ++k) {
                PlacedGlyph& first = glyphs[bases[k]];
                if (!rule.coverage.contains(first.glyph)) continue;
                auto it = p->advance.find({first.glyph, glyphs[bases[k + 1]].glyph});
                if (it != p->advance.end()) first.advance += it->second;
            }
        } else if (const auto* p = std::get_if<CursiveAttach>(&rule.payload)) {
            for (std::size_t k = 0; k + 1 < bases.size(); ++k) {
                const PlacedGlyph& prev = glyphs[bases[k]];
                PlacedGlyph& next = glyphs[bases[k + 1]];
                if (!rule.coverage.contains(prev.glyph) || !rule.coverage.contains(next.glyph)) continue;
                const auto* a = find_in(p->anchors, prev.glyph);
                const auto* b = find_in(p->anchors, next.glyph);
                if (a && b && a->exit && b->entry) next.y_offset = prev.y_offset + a->exit->y - b->entry->y;
            }
        }
    }

    Units pen = 0;
    for (std::size_t b : bases) {
        glyphs[b].x_offset = pen + dx[b];
        pen += glyphs[b].advance + glyphs[b].elongation;
    }

    auto covering = [&](LookupKind kind, const GlyphId& mark) {
        std::vector<const LookupRule*> out;
        for (const auto& rule : rules) {
            if (rule.kind() == kind && enabled(rule, features) && rule.coverage.contains(mark)) out.push_back(&rule);
        }
        return out;
    };

    for (std::size_t i = 0; i < glyphs.size(); ++i) {
        PlacedGlyph& g = glyphs[i];
        if (!g.is_mark) continue;
        const MarkGlyph* mark = font.mark(g.glyph);
        if (!mark) throw Error(ErrorCode::Ref, g.glyph);
        const PlacedGlyph& owner = glyphs[g.owner];

        // Stack on the preceding mark of the same owner when a rule allows it.
        if (i > 0 && glyphs[i - 1].is_mark && glyphs[i - 1].owner == g.owner) {
            const PlacedGlyph& lower = glyphs[i - 1];
            const MarkGlyph* lower_mark = font.mark(lower.glyph);
            bool stacked = false;
            for (const LookupRule* rule : covering(LookupKind::MarkToMark, g.glyph)) {
                const auto& p = std::get<MarkToMark>(rule->payload);
                if (p.base_marks.count(lower.glyph) && lower_mark->attachment == mark->attachment) {
                    const Point at = attach_mark_to_mark({lower.x_offset, lower.y_offset}, *lower_mark, *mark);
                    g.x_offset = at.x;
                    g.y_offset = at.y;
                    g.attached_to = Attachment{i - 1, mark->attachment, true};
                    stacked = true;
                    break;
                }
            }
            if (stacked) continue;
        }

        const LigatureEntry* lig = font.ligature(owner.glyph);
        Point at;
        if (lig) {
            at = attach_mark_to_ligature({0, 0}, *lig, g.component, *mark, owner.elongation);
        } else {
            at = attach_mark_to_base({0, 0}, *font.glyph(owner.glyph), *mark, owner.elongation);
        }
        g.x_offset = at.x;
        g.y_offset = at.y;
        g.attached_to = Attachment{g.owner, mark->attachment, false};
    }
}

Units logical_x(std::span<const PlacedGlyph> glyphs, std::size_t owner, Units x) {
    const PlacedGlyph& o = glyphs[owner];
    return o.x_offset + o.advance + o.elongation - x;
}

Rect logical_ink(const FontDescription& font, std::span<const PlacedGlyph> glyphs, std::size_t index) {
    const PlacedGlyph& g = glyphs[index];
    if (g.is_mark) {
        const Rect& ink = font.mark(g.glyph)->ink;
        const PlacedGlyph& o = glyphs[g.owner];
        return {logical_x(glyphs, g.owner, g.x_offset + ink.x_max), o.y_offset + g.y_offset + ink.y_min,
                logical_x(glyphs, g.owner, g.x_offset + ink.x_min), o.y_offset + g.y_offset + ink.y_max};
    }
    const Rect& ink = font.glyph(g.glyph)->ink;
    return {logical_x(glyphs, index, ink.x_max + g.elongation), g.y_offset + ink.y_min, logical_x(glyphs, index, ink.x_min),
            g.y_offset + ink.y_max};
}

}  // namespace qalam
