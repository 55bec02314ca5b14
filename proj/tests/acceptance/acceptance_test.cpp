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

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles/break_oracle.h"
#include "oracles/joining_oracle.h"
#include "qalam/diacritics.h"
#include "qalam/error.h"
#include "qalam/kashida.h"
#include "qalam/lookup.h"
#include "support/test_support.h"

namespace qalam {
namespace {

using test::demo_font;

struct Outcome {
    bool pass = false;
    std::string detail;
};

constexpr CodePoint kLam = 0x0644;
const std::set<CodePoint> kAlefs = {0x0622, 0x0623, 0x0625, 0x0627};

std::vector<LetterRecord> all_letters() {
    std::vector<LetterRecord> out;
    for (const auto& [cp, l] : TextModel::builtin().letters()) out.push_back(l);
    return out;
}

Outcome joining_oracle() {
    const auto ref = oracle::JoiningReference::load(test::source_path("tests/data/ArabicShaping-subset.txt").string());
    const auto letters = all_letters();
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    auto check = [&](const std::vector<LetterRecord>& word) {
        std::vector<CodePoint> cps;
        for (const auto& l : word) cps.push_back(l.code_point);
        ++checked;
        mismatches += analyze_joining(word) != ref.forms(cps);
    };
    std::vector<LetterRecord> word;
    const std::function<void(std::size_t)> walk = [&](std::size_t depth) {
        if (!word.empty()) check(word);
        if (depth == 3) return;
        for (const auto& l : letters) {
            word.push_back(l);
            walk(depth + 1);
            word.pop_back();
        }
    };
    walk(0);
    std::mt19937 rng(1);
    for (int k = 0; k < 100000; ++k) {
        word.assign(4 + rng() % 3, LetterRecord{});
        for (auto& l : word) l = letters[rng() % letters.size()];
        check(word);
    }
    return {mismatches == 0, std::to_string(checked) + " words, " + std::to_string(mismatches) + " mismatches"};
}

Outcome lam_alef_ligation() {
    std::vector<CodePoint> letters;
    for (const auto& [cp, forms] : demo_font().cmap) letters.push_back(cp);
    const std::vector<CodePoint> alefs(kAlefs.begin(), kAlefs.end());
    const std::vector<std::string> optional = {"liga", "jalt", "ss01", "rlig"};
    std::mt19937 rng(2);
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
        std::u32string text;
        const std::size_t before = rng() % 4;
        const std::size_t after = rng() % 4;
        for (std::size_t i = 0; i < before; ++i) text += static_cast<char32_t>(letters[rng() % letters.size()]);
        text += static_cast<char32_t>(kLam);
        if (rng() % 3 == 0) text += static_cast<char32_t>(0x064E);
        text += static_cast<char32_t>(alefs[rng() % alefs.size()]);
        for (std::size_t i = 0; i < after; ++i) text += static_cast<char32_t>(letters[rng() % letters.size()]);
        FeatureSet features;
        for (const auto& f : optional) {
            if (rng() % 2) features.insert(f);
        }
        const auto clusters = decompose(text);
        std::size_t pairs = 0;
        for (std::size_t i = 0; i + 1 < clusters.size(); ++i) {
            pairs += clusters[i].base.code_point == kLam && kAlefs.count(clusters[i + 1].base.code_point);
        }
        const ShapedWord w = shape_word(clusters, demo_font(), features);
        std::size_t ligatures = 0;
        for (std::size_t i : w.base_indices()) ligatures += w.glyphs[i].glyph.rfind("lam_alef", 0) == 0;
        failures += ligatures != pairs || pairs == 0;
    }
    return {failures == 0, "1000 words, " + std::to_string(failures) + " without the ligature"};
}

GlyphMetrics base_with(Point anchor) {
    GlyphMetrics g;
    g.advance = 300;
    g.ink = {0, 0, 300, 300};
    g.anchors = {{MarkPlacement::Above, anchor}};
    return g;
}

MarkGlyph mark_with(Point anchor) {
    MarkGlyph m;
    m.attachment = MarkPlacement::Above;
    m.anchor = anchor;
    m.ink = {0, 0, 60, 40};
    return m;
}

Outcome attachment_arithmetic() {
    std::mt19937 rng(3);
    std::uniform_int_distribution<Units> coord(-5000, 5000);
    std::uniform_int_distribution<Units> stretch(0, 1000);
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
        const Point a{coord(rng), coord(rng)};
        const Point m{coord(rng), coord(rng)};
        const Point t{coord(rng), coord(rng)};
        const Point u{coord(rng), coord(rng)};
        const Units e = stretch(rng);
        const GlyphMetrics base = base_with(a);
        const MarkGlyph mark = mark_with(m);
        bool ok = attach_mark_to_base({0, 0}, base, mark) == a - m;
        ok &= attach_mark_to_base(t, base, mark) == t + a - m;
        ok &= attach_mark_to_base(t + u, base, mark) == attach_mark_to_base(t, base, mark) + u;
        ok &= attach_mark_to_base(t, base, mark, e) == t + a - m + Point{e / 2, 0};

        LigatureEntry lig;
        lig.components = {"x", "y"};
        const Point b{coord(rng), coord(rng)};
        lig.component_anchors = {{{MarkPlacement::Above, a}}, {{MarkPlacement::Above, b}}};
        ok &= attach_mark_to_ligature(t, lig, 0, mark, e) == t + a - m;
        ok &= attach_mark_to_ligature(t, lig, 1, mark, e) == t + b - m + Point{e / 2, 0};

        MarkGlyph lower = mark_with({0, 0});
        lower.mark_anchor_above = a;
        ok &= attach_mark_to_mark(t, lower, mark) == t + a - m;
        ok &= attach_mark_to_mark(t + u, lower, mark) == attach_mark_to_mark(t, lower, mark) + u;
        failures += !ok;
    }
    return {failures == 0, "1000 pairs, " + std::to_string(failures) + " violations"};
}

Outcome diacritic_properties() {
    const auto& words = test::corpus_words();
    const GlyphId fatha = demo_font().mark_cmap.at(0x064E);
    const GlyphId fathatan = demo_font().mark_cmap.at(0x064B);
    std::mt19937 rng(4);
    int idempotence = 0;
    int monotonicity = 0;
    int legality = 0;
    for (int k = 0; k < 1000; ++k) {
        const ShapedWord base = shape_word(words[rng() % words.size()], demo_font(), {"liga"});
        const auto sites = enumerate_sites(base, demo_font());
        ShapedWord w = base;
        for (const StretchSite& s : sites) {
            if (rng() % 2) w.glyphs[s.glyph_index].elongation = static_cast<Units>(rng() % (s.capacity + 1));
        }
        relayout(w, demo_font());
        const MarkLayout first = place_diacritics(w, demo_font());
        ShapedWord placed = w;
        apply_marks(placed, first.marks);
        idempotence += !(place_diacritics(placed, demo_font()) == first);
        for (const PlacedMark& m : first.marks) {
            const bool resizable = m.mark == fatha || m.mark == fathatan;
            legality += (m.variant != SizeVariant::Normal && !resizable) || (m.variant == SizeVariant::Normal && m.glyph != m.mark);
        }
        // Sweep each site's elongation; sizes never shrink as it grows.
        for (const StretchSite& s : sites) {
            std::map<std::size_t, SizeVariant> seen;
            for (Units e = 0; e <= s.capacity; e += 20) {
                ShapedWord v = base;
                v.glyphs[s.glyph_index].elongation = e;
                relayout(v, demo_font());
                for (const PlacedMark& m : place_diacritics(v, demo_font()).marks) {
                    auto [it, fresh] = seen.emplace(m.index, m.variant);
                    if (!fresh) {
                        monotonicity += static_cast<int>(m.variant) < static_cast<int>(it->second);
                        it->second = m.variant;
                    }
                }
            }
        }
    }
    return {idempotence + monotonicity + legality == 0,
            "1000 words, idempotence " + std::to_string(idempotence) + ", monotonicity " + std::to_string(monotonicity) +
                    ", legality " + std::to_string(legality) + " violations"};
}

// Shared random paragraphs from the demo corpus.
struct OracleCase {
    std::vector<WordBox> boxes;
    Units measure = 0;
};

std::vector<OracleCase> oracle_corpus() {
    std::mt19937 rng(5);
    std::vector<OracleCase> out;
    for (int k = 0; k < 200; ++k) {
        const auto words = test::random_paragraph(rng, 12, {"liga", "jalt"});
        const KashidaPolicy policy = rng() % 2 ? KashidaPolicy::Single : KashidaPolicy::Spread;
        OracleCase c;
        Units widest = 0;
        for (const auto& w : words) {
            c.boxes.push_back(word_box(w, demo_font(), policy));
            Units narrowest = c.boxes.back().variants[0].width;
            for (const auto& v : c.boxes.back().variants) narrowest = std::min(narrowest, v.width);
            widest = std::max(widest, narrowest);
        }
        c.measure = widest + static_cast<Units>(rng() % 4000);
        out.push_back(std::move(c));
    }
    return out;
}

bool split_free = true;
std::size_t layouts_checked = 0;

void note_layout(const ParagraphLayout& layout, std::size_t words) {
    ++layouts_checked;
    split_free &= test::words_unsplit(layout, words);
}

std::optional<ParagraphLayout> try_optimum(const OracleCase& c, const BreakParams& p) {
    try {
        return break_optimum(c.boxes, c.measure, demo_font().glue, p);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoFeasibleBreak) throw;
        return std::nullopt;
    }
}

Outcome dp_optimality(const std::vector<OracleCase>& corpus) {
    BreakParams p;
    p.explore_variants = true;
    int mismatches = 0;
    int feasible = 0;
    std::chrono::duration<double> spent{0};
    for (const OracleCase& c : corpus) {
        const auto want = oracle::exhaustive_optimum(c.boxes, c.measure, demo_font().glue, p);
        const auto start = std::chrono::steady_clock::now();
        const auto got = try_optimum(c, p);
        spent += std::chrono::steady_clock::now() - start;
        feasible += want.feasible;
        if (got) note_layout(*got, c.boxes.size());
        if (want.feasible != got.has_value() || (got && got->total_demerits != want.total)) ++mismatches;
    }
    std::ostringstream detail;
    detail << corpus.size() << " paragraphs (" << feasible << " feasible), " << mismatches << " mismatches, "
           << spent.count() << " s";
    return {mismatches == 0 && spent.count() < 10.0, detail.str()};
}

Outcome optimum_vs_greedy() {
    std::mt19937 rng(6);
    int worse = 0;
    int off_measure = 0;
    int lines = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto words = test::random_paragraph(rng, 16, {"liga", "jalt"});
        BreakParams p;
        p.explore_variants = rng() % 2;
        std::vector<WordBox> boxes;
        Units widest = 0;
        for (const auto& w : words) {
            boxes.push_back(word_box(w, demo_font(), KashidaPolicy::Single));
            widest = std::max(widest, boxes.back().variants[0].width);
        }
        const Units measure = widest + static_cast<Units>(rng() % 5000);
        const ParagraphLayout greedy = break_greedy(boxes, measure, demo_font().glue, p);
        const ParagraphLayout best = break_optimum(boxes, measure, demo_font().glue, p);
        note_layout(greedy, boxes.size());
        note_layout(best, boxes.size());
        worse += best.total_demerits > greedy.total_demerits;
        for (const ParagraphLayout* layout : {&greedy, &best}) {
            for (const LineLayout& l : layout->lines) {
                if (l.last || l.underfull) continue;
                ++lines;
                off_measure += std::abs(l.width - measure) > 1;
            }
        }
    }
    return {worse + off_measure == 0, "1000 paragraphs, " + std::to_string(worse) + " worse than greedy, " +
                                              std::to_string(off_measure) + " of " + std::to_string(lines) +
                                              " justified lines off measure"};
}

bool intervals_meet(const std::vector<Span>& a, const std::vector<Span>& b) {
    for (const Span& x : a) {
        for (const Span& y : b) {
            if (std::max(x.begin, y.begin) < std::min(x.end, y.end)) return true;
        }
    }
    return false;
}

Outcome overlap_avoidance(const std::vector<OracleCase>& corpus) {
    BreakParams p;
    p.explore_variants = true;
    p.overlap_penalty = kInfinity;
    int failures = 0;
    int feasible = 0;
    int avoided = 0;
    for (const OracleCase& c : corpus) {
        const auto want = oracle::exhaustive_optimum(c.boxes, c.measure, demo_font().glue, p);
        const auto got = try_optimum(c, p);
        if (!want.feasible) {
            failures += got.has_value();
            continue;
        }
        ++feasible;
        if (!got) {
            ++failures;
            continue;
        }
        note_layout(*got, c.boxes.size());
        for (std::size_t l = 1; l < got->lines.size(); ++l) {
            const auto& prev = got->lines[l - 1];
            const auto& line = got->lines[l];
            failures += (prev.signature & line.signature) != 0 || intervals_meet(prev.kashida_intervals, line.kashida_intervals);
        }
        // Cases where a zero penalty would have stacked kashida.
        BreakParams lax = p;
        lax.overlap_penalty = 0;
        if (const auto free = try_optimum(c, lax)) {
            for (std::size_t l = 1; l < free->lines.size(); ++l) {
                if (free->lines[l - 1].signature & free->lines[l].signature) {
                    ++avoided;
                    break;
                }
            }
        }
    }
    return {failures == 0, std::to_string(feasible) + " feasible paragraphs, " + std::to_string(avoided) +
                                   " needed avoidance, " + std::to_string(failures) + " failures"};
}

Outcome no_hyphenation() {
    // Full pipeline on the corpus: every word comes back whole on one line.
    std::string text = test::read_text(test::source_path("data/corpus/demo.txt"));
    const auto words = test::shape_text(text, demo_font(), {"liga", "jalt"});
    int broken = 0;
    for (Units measure : {2500, 4000, 6000, 9000}) {
        JustifyOptions o;
        o.measure = measure;
        o.params.explore_variants = true;
        for (Algorithm a : {Algorithm::Greedy, Algorithm::Optimum}) {
            o.algorithm = a;
            const JustifiedParagraph out = justify_paragraph(words, demo_font(), o);
            ParagraphLayout layout;
            for (const JustifiedLine& jl : out.lines) {
                layout.lines.push_back(jl.line);
                for (std::size_t k = 0; k < jl.words.size(); ++k) {
                    const ShapedWord& set = jl.words[k];
                    std::set<std::size_t> covered;
                    for (const auto& sources : set.source_clusters) covered.insert(sources.begin(), sources.end());
                    broken += set.clusters != words[jl.line.words[k].word].clusters ||
                              covered.size() != set.clusters.size();
                }
            }
            note_layout(layout, words.size());
        }
    }
    split_free &= broken == 0;
    return {split_free, std::to_string(layouts_checked) + " layouts, " + (split_free ? "no" : "some") + " split words"};
}

Outcome determinism() {
    const std::string font = "'" + test::demo_font_path() + "'";
    const std::string corpus = "'" + test::source_path("data/corpus/demo.txt").string() + "'";
    const auto dir = std::filesystem::temp_directory_path() / ("qalam-acceptance-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::vector<std::string> commands = {
            test::cli_path() + " shape --font " + font + " --features liga,jalt --text-file " + corpus,
            test::cli_path() + " justify --font " + font + " --width 6000 --variants on --features liga,jalt --text-file " + corpus,
            test::cli_path() + " justify --font " + font + " --width 4000 --algorithm greedy --kashida-policy spread --text-file " + corpus,
    };
    int differing = 0;
    int runs = 0;
    for (std::size_t k = 0; k < commands.size(); ++k) {
        const auto a = test::run_command(commands[k] + " 2>/dev/null");
        const auto b = test::run_command(commands[k] + " 2>/dev/null");
        differing += a.exit_code != 0 || a.out != b.out || a.out.empty();
        const auto layout = dir / ("layout" + std::to_string(k) + ".json");
        test::write_text(layout, a.out);
        const std::string render = test::cli_path() + " render --layout '" + layout.string() + "'";
        const auto r1 = test::run_command(render);
        const auto r2 = test::run_command(render);
        differing += r1.exit_code != 0 || r1.out != r2.out || r1.out.empty();
        runs += 2;
    }
    std::filesystem::remove_all(dir);
    return {differing == 0, std::to_string(runs) + " command pairs, " + std::to_string(differing) + " differing"};
}

Outcome font_lint() {
    int errors = 0;
    for (const Diagnostic& d : lint_font(demo_font())) errors += d.severity == Severity::Error;
    std::set<std::string> triggered;
    int silent = 0;
    for (const auto& e : std::filesystem::directory_iterator(test::source_path("tests/fixtures/lint"))) {
        const auto fixture = nlohmann::json::parse(test::read_text(e.path()));
        const std::string rule = fixture.at("rule");
        bool hit = false;
        for (const Diagnostic& d : lint_font(load_font(test::patched_font_json(fixture.at("patch").dump())))) {
            hit |= d.code == rule;
        }
        if (hit) triggered.insert(rule);
        else ++silent;
    }
    return {errors == 0 && silent == 0 && triggered.size() >= 6,
            "demo font " + std::to_string(errors) + " errors, " + std::to_string(triggered.size()) + " rules triggered, " +
                    std::to_string(silent) + " silent fixtures"};
}

}  // namespace
}  // namespace qalam

int main() {
    using namespace qalam;
    const auto corpus = oracle_corpus();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
            {"joining oracle", joining_oracle},
            {"lam-alef mandatory ligation", lam_alef_ligation},
            {"attachment arithmetic", attachment_arithmetic},
            {"diacritic idempotence, monotonicity, variant legality", diacritic_properties},
            {"optimum matches exhaustive oracle", [&] { return dp_optimality(corpus); }},
            {"optimum vs greedy, justified widths", optimum_vs_greedy},
            {"no stacked kashida with infinite overlap penalty", [&] { return overlap_avoidance(corpus); }},
            {"no hyphenation", no_hyphenation},
            {"determinism", determinism},
            {"font lint", font_lint},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << k + 1 << ": " << criteria[k].first << " (" << o.detail << ")"
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
