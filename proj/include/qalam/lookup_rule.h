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

#ifndef QALAM_LOOKUP_RULE_H
#define QALAM_LOOKUP_RULE_H

#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qalam/geometry.h"

namespace qalam {

using GlyphId = std::string;

/// The set of glyphs a lookup applies to.
class CoverageTable {
public:
    CoverageTable() = default;
    CoverageTable(std::initializer_list<GlyphId> glyphs) : mGlyphs(glyphs) {}
    template <typename Range>
    explicit CoverageTable(const Range& glyphs) : mGlyphs(std::begin(glyphs), std::end(glyphs)) {}

    bool contains(std::string_view glyph) const { return mGlyphs.find(glyph) != mGlyphs.end(); }
    const std::set<GlyphId, std::less<>>& glyphs() const { return mGlyphs; }
    bool empty() const { return mGlyphs.empty(); }

    bool operator==(const CoverageTable&) const = default;

private:
    std::set<GlyphId, std::less<>> mGlyphs;
};

// Order matches the alternatives of LookupPayload.
enum class LookupKind {
    SingleSub,
    MultipleSub,
    AlternateSub,
    LigatureSub,
    ContextualSub,
    SingleAdj,
    PairAdj,
    CursiveAttach,
    MarkToBase,
    MarkToLigature,
    MarkToMark,
};

std::string_view to_string(LookupKind k);
std::optional<LookupKind> lookup_kind_from(std::string_view s);
bool is_substitution(LookupKind k);

struct SingleSub {
    std::map<GlyphId, GlyphId> map;
    bool operator==(const SingleSub&) const = default;
};

struct MultipleSub {
    std::map<GlyphId, std::vector<GlyphId>> map;
    bool operator==(const MultipleSub&) const = default;
};

struct AlternateSub {
    std::map<GlyphId, std::vector<GlyphId>> alternates;  // each list non-empty
    bool operator==(const AlternateSub&) const = default;
};

struct LigatureSpec {
    std::vector<GlyphId> components;
    GlyphId glyph;
    bool operator==(const LigatureSpec&) const = default;
};

struct LigatureSub {
    std::vector<LigatureSpec> ligatures;  // tried in order
    bool operator==(const LigatureSub&) const = default;
};

// Single-glyph substitution gated on the neighbouring base glyphs. An empty
// context set places no constraint on that side.
struct ContextualSub {
    std::set<GlyphId> before;
    std::set<GlyphId> after;
    std::map<GlyphId, GlyphId> map;
    bool operator==(const ContextualSub&) const = default;
};

struct ValueRecord {
    Units dx = 0;
    Units dy = 0;
    Units advance = 0;
    bool operator==(const ValueRecord&) const = default;
};

struct SingleAdj {
    std::map<GlyphId, ValueRecord> values;
    bool operator==(const SingleAdj&) const = default;
};

// Advance adjustment applied to the first glyph of a base pair.
struct PairAdj {
    std::map<std::pair<GlyphId, GlyphId>, Units> advance;
    bool operator==(const PairAdj&) const = default;
};

struct CursiveAnchors {
    std::optional<AnchorPoint> entry;
    std::optional<AnchorPoint> exit;
    bool operator==(const CursiveAnchors&) const = default;
};

struct CursiveAttach {
    std::map<GlyphId, CursiveAnchors> anchors;
    bool operator==(const CursiveAttach&) const = default;
};

struct MarkToBase {
    std::set<GlyphId> bases;
    bool operator==(const MarkToBase&) const = default;
};

struct MarkToLigature {
    std::set<GlyphId> ligatures;
    bool operator==(const MarkToLigature&) const = default;
};

struct MarkToMark {
    std::set<GlyphId> base_marks;
    bool operator==(const MarkToMark&) const = default;
};

using LookupPayload = std::variant<SingleSub, MultipleSub, AlternateSub, LigatureSub, ContextualSub, SingleAdj,
                                   PairAdj, CursiveAttach, MarkToBase, MarkToLigature, MarkToMark>;

struct LookupRule {
    std::string feature;  // feature tag gating the rule
    bool ignore_marks = false;
    CoverageTable coverage;  // for attachments: the attaching marks
    LookupPayload payload;

    LookupKind kind() const { return static_cast<LookupKind>(payload.index()); }
    bool operator==(const LookupRule&) const = default;
};

}  // namespace qalam

#endif  // QALAM_LOOKUP_RULE_H
