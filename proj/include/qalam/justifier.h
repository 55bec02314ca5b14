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

#ifndef QALAM_JUSTIFIER_H
#define QALAM_JUSTIFIER_H

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qalam/diacritics.h"
#include "qalam/font.h"
#include "qalam/kashida.h"
#include "qalam/shaper.h"

namespace qalam {

using Demerits = std::int64_t;
inline constexpr Demerits kInfinity = std::numeric_limits<Demerits>::max();

// Demerits sum that saturates at kInfinity.
Demerits add_demerits(Demerits a, Demerits b);

// A place inside a word where kashida can be inserted.
struct StretchSlot {
    Units offset = 0;    // logical x inside the word
    Units capacity = 0;

    bool operator==(const StretchSlot&) const = default;
};

struct BoxVariant {
    std::string id;
    Units width = 0;
    std::vector<StretchSlot> slots;  // priority order

    Units max_extra() const;
    bool operator==(const BoxVariant&) const = default;
};

// A word as the line breaker sees it. variants[0] is the default.
struct WordBox {
    std::vector<BoxVariant> variants;

    bool operator==(const WordBox&) const = default;
};

struct BreakParams {
    Demerits line_penalty = 10;
    Demerits overlap_penalty = 3000;  // kInfinity forbids stacked kashida
    bool explore_variants = false;
};

// 100·|r|³ capped at 10000; kInfinity when r < -1.
Demerits badness(double r);
// (line_penalty + badness)² + overlap_penalty · overlaps.
Demerits demerits(Demerits badness, int overlaps, const BreakParams& params);

inline constexpr int kSignatureBuckets = 8;

// Buckets of width measure/8 touched by the intervals.
std::uint8_t interval_signature(std::span<const Span> intervals, Units measure);

struct LineWord {
    std::size_t word = 0;
    std::size_t variant = 0;
    Units x = 0;                   // logical start within the line
    Units width = 0;               // variant width plus kashida
    std::vector<Units> slot_allocations;  // parallel to the variant's slots

    bool operator==(const LineWord&) const = default;
};

struct LineLayout {
    std::size_t begin = 0;  // first word
    std::size_t end = 0;    // one past the last word
    std::vector<LineWord> words;
    std::vector<Units> glue;  // final width of each inter-word gap
    Units natural = 0;
    Units stretch = 0;
    Units shrink = 0;
    double ratio = 0;
    Demerits badness = 0;
    Demerits demerits = 0;
    std::vector<Span> kashida_intervals;
    std::uint8_t signature = 0;
    bool last = false;
    bool underfull = false;  // no elastic material left to reach the measure
    Units width = 0;

    bool operator==(const LineLayout&) const = default;
};

struct ParagraphLayout {
    std::vector<LineLayout> lines;
    Demerits total_demerits = 0;

    bool operator==(const ParagraphLayout&) const = default;
};

// Lays out words[begin, end) with the chosen variants. Demerits are computed
// against the previous line's signature.
// Throws Error{Infeasible} when the line would have to shrink past its limit.
LineLayout justify_line(std::span<const WordBox> words, std::size_t begin, std::span<const std::size_t> variants,
                        Units measure, const GlueSpec& glue, const BreakParams& params, bool last,
                        std::uint8_t previous_signature = 0);

// Throws Error{WordTooWide}.
ParagraphLayout break_greedy(std::span<const WordBox> words, Units measure, const GlueSpec& glue,
                             const BreakParams& params = {});
// Throws Error{WordTooWide|NoFeasibleBreak}.
ParagraphLayout break_optimum(std::span<const WordBox> words, Units measure, const GlueSpec& glue,
                              const BreakParams& params = {});

// Line breaker view of a shaped word.
WordBox word_box(const ShapedWord& word, const FontDescription& font, KashidaPolicy policy);

enum class Algorithm { Greedy, Optimum };

struct JustifyOptions {
    Units measure = 0;
    Algorithm algorithm = Algorithm::Optimum;
    BreakParams params;
    KashidaPolicy policy = KashidaPolicy::Single;
    DiacriticParams diacritics;
};

struct JustifiedLine {
    LineLayout line;
    std::vector<ShapedWord> words;  // elongated, marks placed
};

struct JustifiedParagraph {
    std::vector<JustifiedLine> lines;
    Demerits total_demerits = 0;
    std::vector<Diagnostic> diagnostics;
};

// Breaks, elongates, and places marks.
JustifiedParagraph justify_paragraph(std::span<const ShapedWord> words, const FontDescription& font,
                                     const JustifyOptions& options);

}  // namespace qalam

#endif  // QALAM_JUSTIFIER_H
