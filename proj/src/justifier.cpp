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

#include "qalam/justifier.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "qalam/error.h"

namespace qalam {

namespace {

// Splits `total` across `weights` in proportion, largest remainder first,
// ties to the lower index. Requires total <= sum(weights) when sum > 0.
std::vector<Units> proportional(Units total, const std::vector<Units>& weights) {
    std::vector<Units> out(weights.size(), 0);
    std::int64_t sum = 0;
    for (Units w : weights) sum += w;
    if (sum == 0 || total == 0) return out;
    std::vector<std::pair<std::int64_t, std::size_t>> rest;
    Units given = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const std::int64_t scaled = std::int64_t{total} * weights[i];
        out[i] = static_cast<Units>(scaled / sum);
        given += out[i];
        rest.emplace_back(scaled % sum, i);
    }
    std::stable_sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; given < total; ++k, ++given) ++out[rest[k].second];
    return out;
}

// Splits `total` evenly, remainder to the first entries.
std::vector<Units> even(Units total, std::size_t count) {
    std::vector<Units> out(count, 0);
    if (count == 0) return out;
    const Units n = static_cast<Units>(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = total / n + (static_cast<Units>(i) < total % n ? 1 : 0);
    return out;
}

std::optional<LineLayout> try_line(std::span<const WordBox> words, std::size_t begin,
                                   std::span<const std::size_t> variants, Units measure, const GlueSpec& glue,
                                   const BreakParams& params, bool last, std::uint8_t previous_signature) {
    LineLayout line;
    line.begin = begin;
    line.end = begin + variants.size();
    line.last = last;
    const std::size_t n = variants.size();
    const std::size_t gaps = n == 0 ? 0 : n - 1;
    const Units g = static_cast<Units>(gaps);

    std::vector<Units> caps;
    Units capacity = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const BoxVariant& v = words[begin + k].variants.at(variants[k]);
        line.natural += v.width;
        caps.push_back(v.max_extra());
        capacity += caps.back();
    }
    line.natural += g * glue.width;
    line.stretch = capacity + g * glue.stretch;
    line.shrink = g * glue.shrink;
    const Units deficit = measure - line.natural;

    std::vector<Units> kashida(n, 0);
    line.glue.assign(gaps, glue.width);
    if (deficit < 0) {
        if (line.shrink == 0 || -deficit > line.shrink) return std::nullopt;
        line.ratio = static_cast<double>(deficit) / line.shrink;
        const auto cut = even(-deficit, gaps);
        for (std::size_t k = 0; k < gaps; ++k) line.glue[k] -= cut[k];
    } else if (last) {
        line.ratio = 0;
    } else {
        if (line.stretch > 0) {
            line.ratio = static_cast<double>(deficit) / line.stretch;
        } else {
            line.ratio = deficit == 0 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        const Units k_total = std::min(deficit, capacity);
        kashida = proportional(k_total, caps);
        const Units rest = deficit - k_total;
        if (gaps > 0) {
            const auto add = even(rest, gaps);
            for (std::size_t k = 0; k < gaps; ++k) line.glue[k] += add[k];
        } else if (rest > 0) {
            line.underfull = true;
        }
    }
    line.badness = last && deficit >= 0 ? 0 : badness(line.ratio);

    Units x = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const BoxVariant& v = words[begin + k].variants.at(variants[k]);
        LineWord lw;
        lw.word = begin + k;
        lw.variant = variants[k];
        lw.x = x;
        lw.slot_allocations.assign(v.slots.size(), 0);
        Units left = kashida[k];
        for (std::size_t s = 0; s < v.slots.size() && left > 0; ++s) {
            lw.slot_allocations[s] = std::min(left, v.slots[s].capacity);
            left -= lw.slot_allocations[s];
        }
        // Slots in logical order; earlier insertions push later slots along.
        std::vector<std::size_t> order(v.slots.size());
        for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return v.slots[a].offset < v.slots[b].offset; });
        Units pushed = 0;
        for (std::size_t s : order) {
            const Units a = lw.slot_allocations[s];
            if (a == 0) continue;
            const Units start = x + v.slots[s].offset + pushed;
            line.kashida_intervals.push_back({start, start + a});
            pushed += a;
        }
        lw.width = v.width + kashida[k];
        x += lw.width;
        if (k < gaps) x += line.glue[k];
        line.words.push_back(std::move(lw));
    }
    line.width = x;
    line.signature = interval_signature(line.kashida_intervals, measure);
    line.demerits = demerits(line.badness, std::popcount(static_cast<unsigned>(line.signature & previous_signature)), params);
    return line;
}

Units min_width(const WordBox& w, bool explore) {
    if (!explore) return w.variants.at(0).width;
    Units m = w.variants.at(0).width;
    for (const auto& v : w.variants) m = std::min(m, v.width);
    return m;
}

void check_widths(std::span<const WordBox> words, Units measure, bool explore) {
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].variants.empty()) throw Error(ErrorCode::WordTooWide, "word " + std::to_string(i) + " has no variants");
        if (min_width(words[i], explore) > measure) {
            throw Error(ErrorCode::WordTooWide, "word " + std::to_string(i) + " is wider than the measure");
        }
    }
}

struct Node {
    Demerits total = 0;
    std::size_t lines = 0;
    std::vector<std::size_t> breaks;
    std::vector<std::size_t> variants;
    LineLayout line;
    std::size_t prev_index = 0;
    std::uint8_t prev_signature = 0;

    auto key() const { return std::tie(total, lines, breaks, variants); }
};

}  // namespace

Demerits add_demerits(Demerits a, Demerits b) {
    if (a == kInfinity || b == kInfinity || a > kInfinity - b) return kInfinity;
    return a + b;
}

Units BoxVariant::max_extra() const {
    Units total = 0;
    for (const auto& s : slots) total += s.capacity;
    return total;
}

Demerits badness(double r) {
    if (r < -1) return kInfinity;
    const double a = std::fabs(r);
    if (a >= 10) return 10000;
    return std::min<Demerits>(10000, std::llround(100 * a * a * a));
}

Demerits demerits(Demerits b, int overlaps, const BreakParams& params) {
    if (b == kInfinity) return kInfinity;
    const Demerits base = (params.line_penalty + b) * (params.line_penalty + b);
    if (overlaps == 0) return base;
    if (params.overlap_penalty == kInfinity) return kInfinity;
    return add_demerits(base, params.overlap_penalty * overlaps);
}

std::uint8_t interval_signature(std::span<const Span> intervals, Units measure) {
    std::uint8_t sig = 0;
    if (measure <= 0) return sig;
    auto bucket = [&](Units x) {
        const std::int64_t b = std::int64_t{kSignatureBuckets} * std::max<Units>(0, x) / measure;
        return static_cast<int>(std::min<std::int64_t>(kSignatureBuckets - 1, b));
    };
    for (const Span& s : intervals) {
        if (s.length() == 0) continue;
        for (int b = bucket(s.begin); b <= bucket(s.end - 1); ++b) sig |= static_cast<std::uint8_t>(1u << b);
    }
    return sig;
}

LineLayout justify_line(std::span<const WordBox> words, std::size_t begin, std::span<const std::size_t> variants,
                        Units measure, const GlueSpec& glue, const BreakParams& params, bool last,
                        std::uint8_t previous_signature) {
    auto line = try_line(words, begin, variants, measure, glue, params, last, previous_signature);
    if (!line) throw Error(ErrorCode::Infeasible, "line cannot shrink to the measure");
    return *line;
}

ParagraphLayout break_greedy(std::span<const WordBox> words, Units measure, const GlueSpec& glue,
                             const BreakParams& params) {
    check_widths(words, measure, params.explore_variants);
    ParagraphLayout out;
    std::size_t begin = 0;
    std::uint8_t sig = 0;
    while (begin < words.size()) {
        std::vector<std::size_t> chosen;
        Units used = 0;
        std::size_t j = begin;
        for (; j < words.size(); ++j) {
            const Units lead = chosen.empty() ? 0 : glue.width;
            std::optional<std::size_t> pick;
            if (used + lead + words[j].variants[0].width <= measure) {
                pick = 0;
            } else if (params.explore_variants) {
                for (std::size_t v = 1; v < words[j].variants.size(); ++v) {
                    const Units w = words[j].variants[v].width;
                    if (used + lead + w <= measure && (!pick || w < words[j].variants[*pick].width)) pick = v;
                }
            }
            if (!pick) break;
            used += lead + words[j].variants[*pick].width;
            chosen.push_back(*pick);
        }
        if (chosen.empty()) throw Error(ErrorCode::WordTooWide, "word " + std::to_string(begin) + " does not fit");
        const bool last = j == words.size();
        LineLayout line = justify_line(words, begin, chosen, measure, glue, params, last, sig);
        sig = line.signature;
        out.total_demerits = add_demerits(out.total_demerits, line.demerits);
        out.lines.push_back(std::move(line));
        begin = j;
    }
    return out;
}

ParagraphLayout break_optimum(std::span<const WordBox> words, Units measure, const GlueSpec& glue,
                              const BreakParams& params) {
    check_widths(words, measure, params.explore_variants);
    const std::size_t n = words.size();
    if (n == 0) return {};
    std::vector<std::map<std::uint8_t, Node>> nodes(n + 1);
    nodes[0][0] = Node{};

    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [sig, from] : nodes[i]) {
            if (from.total == kInfinity) continue;
            Units min_natural = -glue.width;
            for (std::size_t j = i + 1; j <= n; ++j) {
                const WordBox& w = words[j - 1];
                min_natural += glue.width + min_width(w, params.explore_variants);
                const Units gaps = static_cast<Units>(j - i - 1);
                if (min_natural - gaps * glue.shrink > measure) break;

                std::vector<std::size_t> counts;
                for (std::size_t k = i; k < j; ++k) counts.push_back(params.explore_variants ? words[k].variants.size() : 1);
                std::vector<std::size_t> choice(j - i, 0);
                while (true) {
                    auto line = try_line(words, i, choice, measure, glue, params, j == n, sig);
                    if (line && line->demerits != kInfinity) {
                        Node cand;
                        cand.total = add_demerits(from.total, line->demerits);
                        cand.lines = from.lines + 1;
                        cand.breaks = from.breaks;
                        cand.breaks.push_back(j);
                        cand.variants = from.variants;
                        cand.variants.insert(cand.variants.end(), choice.begin(), choice.end());
                        cand.prev_index = i;
                        cand.prev_signature = sig;
                        const std::uint8_t to_sig = line->signature;
                        cand.line = std::move(*line);
                        auto it = nodes[j].find(to_sig);
                        if (it == nodes[j].end()) {
                            nodes[j].emplace(to_sig, std::move(cand));
                        } else if (cand.key() < it->second.key()) {
                            it->second = std::move(cand);
                        }
                    }
                    std::size_t k = 0;
                    while (k < choice.size() && ++choice[k] == counts[k]) choice[k++] = 0;
                    if (k == choice.size()) break;
                }
            }
        }
    }

    if (nodes[n].empty()) throw Error(ErrorCode::NoFeasibleBreak, "no feasible sequence of breaks");
    const Node* best = nullptr;
    for (const auto& [sig, node] : nodes[n]) {
        if (!best || node.key() < best->key()) best = &node;
    }
    ParagraphLayout out;
    out.total_demerits = best->total;
    std::size_t j = n;
    const Node* cur = best;
    while (j > 0) {
        out.lines.push_back(cur->line);
        const std::size_t i = cur->prev_index;
        const std::uint8_t s = cur->prev_signature;
        j = i;
        if (j > 0) cur = &nodes[j].at(s);
    }
    std::reverse(out.lines.begin(), out.lines.end());
    return out;
}

WordBox word_box(const ShapedWord& word, const FontDescription& font, KashidaPolicy policy) {
    WordBox box;
    for (const WordVariant& v : word_variants(word, font)) {
        const ShapedWord realized = realize(word, v, font);
        BoxVariant bv;
        bv.id = v.id;
        bv.width = realized.natural_width();
        if (policy != KashidaPolicy::Off) {
            for (const StretchSite& s : enumerate_sites(realized, font)) {
                const PlacedGlyph& g = realized.glyphs[s.glyph_index];
                bv.slots.push_back({g.x_offset + g.advance, s.capacity});
                if (policy == KashidaPolicy::Single) break;
            }
        }
        box.variants.push_back(std::move(bv));
    }
    return box;
}

JustifiedParagraph justify_paragraph(std::span<const ShapedWord> words, const FontDescription& font,
                                     const JustifyOptions& options) {
    std::vector<WordBox> boxes;
    for (const auto& w : words) boxes.push_back(word_box(w, font, options.policy));
    const ParagraphLayout layout = options.algorithm == Algorithm::Greedy
                                           ? break_greedy(boxes, options.measure, font.glue, options.params)
                                           : break_optimum(boxes, options.measure, font.glue, options.params);

    JustifiedParagraph out;
    out.total_demerits = layout.total_demerits;
    std::uint8_t prev_sig = 0;
    for (std::size_t l = 0; l < layout.lines.size(); ++l) {
        const LineLayout& line = layout.lines[l];
        JustifiedLine jl;
        jl.line = line;
        for (const LineWord& lw : line.words) {
            const auto variants = word_variants(words[lw.word], font);
            ShapedWord realized = realize(words[lw.word], variants.at(lw.variant), font);
            const auto sites = enumerate_sites(realized, font);
            ElongationPlan plan;
            for (std::size_t s = 0; s < lw.slot_allocations.size(); ++s) {
                if (lw.slot_allocations[s] > 0) plan.allocations[sites.at(s).glyph_index] = lw.slot_allocations[s];
            }
            realized = apply_plan(realized, plan, font);
            MarkLayout marks = place_diacritics(realized, font, options.diacritics);
            apply_marks(realized, marks.marks);
            for (auto& d : marks.diagnostics) {
                d.word = lw.word;
                out.diagnostics.push_back(std::move(d));
            }
            jl.words.push_back(std::move(realized));
        }
        if (line.underfull) {
            out.diagnostics.push_back(Diagnostic{Severity::Info, "Underfull",
                                                 "line " + std::to_string(l) + " cannot reach the measure", line.begin,
                                                 std::nullopt});
        }
        if (l > 0 && (line.signature & prev_sig) != 0) {
            out.diagnostics.push_back(Diagnostic{Severity::Warn, "KashidaOverlap",
                                                 "kashida stacks with the previous line on line " + std::to_string(l),
                                                 line.begin, std::nullopt});
        }
        prev_sig = line.signature;
        out.lines.push_back(std::move(jl));
    }
    return out;
}

}  // namespace qalam
