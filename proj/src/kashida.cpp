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

#include "qalam/kashida.h"

#include <algorithm>
#include <tuple>

#include "qalam/error.h"

namespace qalam {

std::string_view to_string(KashidaPolicy p) {
    switch (p) {
        case KashidaPolicy::Single: return "single";
        case KashidaPolicy::Spread: return "spread";
        case KashidaPolicy::Off: return "off";
    }
    return "?";
}

std::optional<KashidaPolicy> kashida_policy_from(std::string_view s) {
    if (s == "single") return KashidaPolicy::Single;
    if (s == "spread") return KashidaPolicy::Spread;
    if (s == "off") return KashidaPolicy::Off;
    return std::nullopt;
}

Units ElongationPlan::allocated() const {
    Units total = 0;
    for (const auto& [i, a] : allocations) total += a;
    return total;
}

std::vector<StretchSite> enumerate_sites(const ShapedWord& word, const FontDescription& font) {
    const auto bases = word.base_indices();
    std::vector<StretchSite> sites;
    for (std::size_t k = 0; k < bases.size(); ++k) {
        const std::size_t i = bases[k];
        const Cluster& c = word.stretch_cluster(i);
        const Units capacity = font.glyph(word.glyphs[i].glyph)->max_extension;
        if (capacity <= 0 || c.base.stretch_class <= 0) continue;
        StretchSite s;
        s.glyph_index = i;
        s.capacity = capacity;
        s.stretch_class = c.base.stretch_class;
        s.hinted = c.stretch_hint > 0;
        s.rank = font.kashida_rank(c.base.stretch_class);
        s.position_weight = k + 2 == bases.size() ? 1 : 0;
        sites.push_back(s);
    }
    std::sort(sites.begin(), sites.end(), [](const StretchSite& a, const StretchSite& b) {
        return std::tie(a.hinted, a.rank, a.position_weight, a.glyph_index) >
               std::tie(b.hinted, b.rank, b.position_weight, b.glyph_index);
    });
    return sites;
}

ElongationPlan allocate(const ShapedWord& word, const FontDescription& font, Units deficit, KashidaPolicy policy) {
    ElongationPlan plan;
    Units left = std::max<Units>(0, deficit);
    if (policy != KashidaPolicy::Off) {
        for (const StretchSite& s : enumerate_sites(word, font)) {
            if (left == 0) break;
            const Units take = std::min(left, s.capacity);
            plan.allocations[s.glyph_index] = take;
            left -= take;
            if (policy == KashidaPolicy::Single) break;
        }
    }
    plan.residual = left;
    return plan;
}

ShapedWord apply_plan(const ShapedWord& word, const ElongationPlan& plan, const FontDescription& font) {
    ShapedWord out = word;
    for (const auto& [i, amount] : plan.allocations) {
        if (i >= out.glyphs.size() || out.glyphs[i].is_mark) {
            throw Error(ErrorCode::CapacityExceeded, "glyph " + std::to_string(i) + " cannot be elongated");
        }
        const bool stretchable = out.stretch_cluster(i).base.stretch_class > 0;
        const Units capacity = stretchable ? font.glyph(out.glyphs[i].glyph)->max_extension : 0;
        if (amount < 0 || amount > capacity) {
            throw Error(ErrorCode::CapacityExceeded, out.glyphs[i].glyph + ": " + std::to_string(amount) +
                                                             " exceeds capacity " + std::to_string(capacity));
        }
        out.glyphs[i].elongation = amount;
    }
    if (!plan.allocations.empty()) relayout(out, font);
    return out;
}

}  // namespace qalam
