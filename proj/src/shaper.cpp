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

#include "qalam/shaper.h"

#include <algorithm>

#include "qalam/error.h"

namespace qalam {

namespace {

const FeatureSet kPositioningFeatures{"curs", "kern", "mark", "mkmk"};

FeatureSet substitution_features(const FeatureSet& requested) {
    FeatureSet out = requested;
    out.emplace(kFeatureRequiredLigatures);
    out.erase(std::string(kFeatureAlternates));
    return out;
}

FeatureSet positioning_features(const FeatureSet& requested) {
    FeatureSet out = requested;
    out.insert(kPositioningFeatures.begin(), kPositioningFeatures.end());
    return out;
}

// Shadda goes first so vowels can stack on it.
std::vector<DiacriticRecord> ordered_marks(const Cluster& c) {
    std::vector<DiacriticRecord> marks = c.marks;
    std::stable_partition(marks.begin(), marks.end(), [](const DiacriticRecord& d) { return d.code_point == kShadda; });
    return marks;
}

GlyphId mark_glyph_for(const FontDescription& font, CodePoint cp) {
    auto it = font.mark_cmap.find(cp);
    if (it == font.mark_cmap.end()) throw Error(ErrorCode::NoGlyph, "no mark glyph for diacritic");
    return it->second;
}

// Features of ligature lookups producing aesthetic ligatures.
FeatureSet aesthetic_ligature_features(const FontDescription& font) {
    FeatureSet out;
    for (const auto& rule : font.gsub) {
        const auto* p = std::get_if<LigatureSub>(&rule.payload);
        if (!p) continue;
        for (const auto& spec : p->ligatures) {
            const LigatureEntry* e = font.ligature(spec.glyph);
            if (e && e->kind == LigatureKind::Aesthetic) out.insert(rule.feature);
        }
    }
    return out;
}

bool has_aesthetic_ligature(const ShapedWord& word, const FontDescription& font) {
    return std::any_of(word.glyphs.begin(), word.glyphs.end(), [&](const PlacedGlyph& g) {
        const LigatureEntry* e = g.is_mark ? nullptr : font.ligature(g.glyph);
        return e && e->kind == LigatureKind::Aesthetic;
    });
}

WordVariant describe(std::string id, const ShapedWord& realized, const FontDescription& font) {
    WordVariant v;
    v.id = std::move(id);
    v.width = realized.natural_width();
    v.max_extra = stretch_capacity(realized, font);
    return v;
}

}  // namespace

Units ShapedWord::natural_width() const {
    Units w = 0;
    for (const auto& g : glyphs) {
        if (!g.is_mark) w += g.advance + g.elongation;
    }
    return w;
}

const Cluster& ShapedWord::stretch_cluster(std::size_t glyph) const {
    return clusters.at(source_clusters.at(glyph).back());
}

std::vector<std::size_t> ShapedWord::base_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
        if (!glyphs[i].is_mark) out.push_back(i);
    }
    return out;
}

ShapedWord shape_word(std::span<const Cluster> clusters, const FontDescription& font, const FeatureSet& features) {
    const std::vector<Form> forms = analyze_joining(clusters);
    std::vector<RunItem> run;
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        run.push_back(RunItem{glyph_for(font, clusters[k].base.code_point, forms[k]), false, {k}});
        for (const auto& d : ordered_marks(clusters[k])) run.push_back(RunItem{mark_glyph_for(font, d.code_point), true, {k}});
    }
    run = apply_gsub(font, font.gsub, std::move(run), substitution_features(features));

    ShapedWord word;
    word.clusters.assign(clusters.begin(), clusters.end());
    word.features = features;
    word.glyphs = placed_from_run(run);
    for (const auto& item : run) word.source_clusters.push_back(item.clusters);
    relayout(word, font);
    return word;
}

void relayout(ShapedWord& word, const FontDescription& font) {
    apply_gpos(font, font.gpos, word.glyphs, positioning_features(word.features));
}

Units stretch_capacity(const ShapedWord& word, const FontDescription& font) {
    Units total = 0;
    for (std::size_t i : word.base_indices()) {
        if (word.stretch_cluster(i).base.stretch_class > 0) total += font.glyph(word.glyphs[i].glyph)->max_extension;
    }
    return total;
}

std::vector<WordVariant> word_variants(const ShapedWord& word, const FontDescription& font) {
    std::vector<WordVariant> out;
    auto add = [&](WordVariant v) {
        if (std::none_of(out.begin(), out.end(), [&](const WordVariant& o) { return o.id == v.id; })) out.push_back(std::move(v));
    };

    const bool ligated = has_aesthetic_ligature(word, font);
    WordVariant def = describe("default", word, font);
    if (ligated) def.description.push_back("ligature_on");
    add(def);

    if (ligated) {
        FeatureSet reduced = word.features;
        for (const auto& f : aesthetic_ligature_features(font)) reduced.erase(f);
        WordVariant v = describe("lig_off", shape_word(word.clusters, font, reduced), font);
        v.description.push_back("ligature_off");
        v.ligatures_off = true;
        add(std::move(v));
    }

    if (word.features.count(kFeatureAlternates)) {
        for (const auto& rule : font.gsub) {
            const auto* p = std::get_if<AlternateSub>(&rule.payload);
            if (!p || rule.feature != kFeatureAlternates) continue;
            for (std::size_t i : word.base_indices()) {
                const GlyphId& g = word.glyphs[i].glyph;
                if (!rule.coverage.contains(g)) continue;
                auto it = p->alternates.find(g);
                if (it == p->alternates.end()) continue;
                for (const auto& alt : it->second) {
                    WordVariant v;
                    v.id = "alt:" + alt;
                    v.allograph = std::make_pair(i, alt);
                    v.description.push_back("allograph:" + alt);
                    const ShapedWord realized = realize(word, v, font);
                    v.width = realized.natural_width();
                    v.max_extra = stretch_capacity(realized, font);
                    add(std::move(v));
                }
            }
        }
    }
    return out;
}

ShapedWord realize(const ShapedWord& word, const WordVariant& variant, const FontDescription& font) {
    ShapedWord out = word;
    if (variant.ligatures_off) {
        FeatureSet reduced = word.features;
        for (const auto& f : aesthetic_ligature_features(font)) reduced.erase(f);
        out = shape_word(word.clusters, font, reduced);
        out.features = word.features;
    }
    if (variant.allograph) {
        out.glyphs.at(variant.allograph->first).glyph = variant.allograph->second;
        relayout(out, font);
    }
    out.variant = variant.id;
    return out;
}

}  // namespace qalam
