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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qalam/diacritics.h"
#include "qalam/error.h"
#include "qalam/font.h"
#include "qalam/justifier.h"
#include "qalam/layout.h"
#include "qalam/shaper.h"
#include "qalam/text_model.h"
#include "qalam/utf8.h"

namespace {

using namespace qalam;

enum Exit { kOk = 0, kFontError = 1, kTextError = 2, kBreakError = 3, kLintError = 4 };

struct Options {
    std::string font;
    std::string text;
    std::string text_file;
    std::string features;
    std::string format = "text";
    std::string kashida_policy = "single";
    Units width = 0;
    std::string algorithm = "optimum";
    Demerits line_penalty = 10;
    std::string overlap_penalty = "3000";
    std::string variants = "off";
    bool stats = false;
    std::string layout;
};

// Error raised while reading the user's text rather than the font.
struct TextFailure {
    Error error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_stdin() { return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()}; }

void report_error(const Options& opt, const Error& e) {
    std::cerr << "qalam: " << to_string(e.code()) << ": " << e.detail() << "\n";
    if (opt.format == "json-errors") {
        Diagnostic d{Severity::Error, std::string(to_string(e.code())), e.detail(), std::nullopt, std::nullopt};
        std::cout << diagnostics_json(std::vector<Diagnostic>{d});
    }
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    for (const Diagnostic& d : diagnostics) {
        std::cerr << to_string(d.severity) << " " << d.code;
        if (d.word) std::cerr << " word=" << *d.word;
        if (d.glyph) std::cerr << " glyph=" << *d.glyph;
        std::cerr << ": " << d.message << "\n";
    }
}

FeatureSet parse_features(const std::string& list) {
    FeatureSet out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.insert(item);
    }
    return out;
}

FontDescription open_font(const Options& opt) {
    std::string path = opt.font;
    if (path.empty()) {
        if (const char* env = std::getenv("QALAM_FONT_PATH")) path = env;
    }
    if (path.empty()) throw Error(ErrorCode::Io, "no font given (use --font or QALAM_FONT_PATH)");
    return load_font_file(path);
}

std::vector<ShapedWord> shape_text(const Options& opt, const FontDescription& font) {
    std::vector<std::vector<Cluster>> words;
    try {
        std::string bytes = opt.text_file.empty() ? opt.text : read_file(opt.text_file);
        for (char& c : bytes) {
            if (c == '\n' || c == '\r' || c == '\t') c = ' ';
        }
        words = split_words(decompose(utf8_decode(bytes)));
    } catch (const Error& e) {
        throw TextFailure{e};
    }
    const FeatureSet features = parse_features(opt.features);
    std::vector<ShapedWord> out;
    for (const auto& w : words) out.push_back(shape_word(w, font, features));
    return out;
}

KashidaPolicy policy_of(const Options& opt) { return *kashida_policy_from(opt.kashida_policy); }

int cmd_shape(const Options& opt) {
    const FontDescription font = open_font(opt);
    std::vector<ShapedWord> words = shape_text(opt, font);
    std::vector<Diagnostic> diagnostics;
    for (std::size_t k = 0; k < words.size(); ++k) {
        MarkLayout marks = place_diacritics(words[k], font);
        apply_marks(words[k], marks.marks);
        for (auto& d : marks.diagnostics) {
            d.word = k;
            diagnostics.push_back(std::move(d));
        }
    }
    print_diagnostics(diagnostics);
    std::cout << to_json(layout_words(words, font, diagnostics));
    return kOk;
}

int cmd_justify(const Options& opt) {
    const FontDescription font = open_font(opt);
    const std::vector<ShapedWord> words = shape_text(opt, font);
    JustifyOptions jo;
    jo.measure = opt.width;
    jo.algorithm = opt.algorithm == "greedy" ? Algorithm::Greedy : Algorithm::Optimum;
    jo.params.line_penalty = opt.line_penalty;
    jo.params.overlap_penalty = opt.overlap_penalty == "inf" ? kInfinity : std::stoll(opt.overlap_penalty);
    jo.params.explore_variants = opt.variants == "on";
    jo.policy = policy_of(opt);
    const JustifiedParagraph paragraph = justify_paragraph(words, font, jo);
    print_diagnostics(paragraph.diagnostics);
    if (opt.stats) {
        std::cerr << "algorithm=" << opt.algorithm << " lines=" << paragraph.lines.size() << " total_demerits=";
        if (paragraph.total_demerits == kInfinity) std::cerr << "inf\n";
        else std::cerr << paragraph.total_demerits << "\n";
    }
    std::cout << to_json(layout_paragraph(paragraph, font, opt.width));
    return kOk;
}

int cmd_render(const Options& opt) {
    LayoutDocument doc;
    try {
        doc = layout_from_json(opt.layout.empty() || opt.layout == "-" ? read_stdin() : read_file(opt.layout));
    } catch (const Error& e) {
        throw TextFailure{e};
    }
    std::cout << render_svg(doc);
    return kOk;
}

int cmd_fontlint(const Options& opt) {
    const FontDescription font = open_font(opt);
    const std::vector<Diagnostic> diagnostics = lint_font(font);
    if (opt.format == "json" || opt.format == "json-errors") {
        std::cout << diagnostics_json(diagnostics);
    } else {
        for (const Diagnostic& d : diagnostics) std::cout << to_string(d.severity) << " " << d.code << ": " << d.message << "\n";
    }
    return has_errors(diagnostics) ? kLintError : kOk;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::WordTooWide:
        case ErrorCode::NoFeasibleBreak:
        case ErrorCode::Infeasible:
            return kBreakError;
        case ErrorCode::UnsupportedCharacter:
        case ErrorCode::LeadingMark:
        case ErrorCode::DuplicateMark:
        case ErrorCode::EmptyWord:
            return kTextError;
        default:
            return kFontError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arabic shaping, diacritic placement and justification"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--font", opt.font, "Font description file (default: $QALAM_FONT_PATH)");
        cmd->add_option("--format", opt.format, "Output: text, json (fontlint) or json-errors")
                ->check(CLI::IsMember({"text", "json", "json-errors"}));
    };
    auto add_text = [&](CLI::App* cmd) {
        auto* text = cmd->add_option("--text", opt.text, "UTF-8 input text");
        auto* file = cmd->add_option("--text-file", opt.text_file, "UTF-8 input file");
        text->excludes(file);
        cmd->add_option("--features", opt.features, "Comma-separated optional features (liga, jalt, ss01)");
        cmd->add_option("--kashida-policy", opt.kashida_policy, "single, spread or off")
                ->check(CLI::IsMember({"single", "spread", "off"}));
    };

    auto* shape = app.add_subcommand("shape", "Shape words and place their marks");
    add_common(shape);
    add_text(shape);

    auto* justify = app.add_subcommand("justify", "Break and justify a paragraph");
    add_common(justify);
    add_text(justify);
    justify->add_option("--width", opt.width, "Measure in font units")->required()->check(CLI::PositiveNumber);
    justify->add_option("--algorithm", opt.algorithm, "greedy or optimum")->check(CLI::IsMember({"greedy", "optimum"}));
    justify->add_option("--line-penalty", opt.line_penalty, "Per-line penalty");
    justify->add_option("--overlap-penalty", opt.overlap_penalty, "Penalty per stacked kashida bucket, or inf");
    justify->add_option("--variants", opt.variants, "Explore word variants: on or off")->check(CLI::IsMember({"on", "off"}));
    justify->add_flag("--stats", opt.stats, "Print totals to stderr");

    auto* render = app.add_subcommand("render", "Render a layout JSON document to SVG");
    add_common(render);
    render->add_option("--layout", opt.layout, "Layout JSON file (default: stdin)");

    auto* fontlint = app.add_subcommand("fontlint", "Check a font description");
    add_common(fontlint);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kTextError;
    }
    for (CLI::App* cmd : {shape, justify}) {
        if (*cmd && cmd->count("--text") + cmd->count("--text-file") == 0) {
            std::cerr << "qalam: --text or --text-file is required\n";
            return kTextError;
        }
    }
    if (opt.overlap_penalty != "inf") {
        try {
            (void)std::stoll(opt.overlap_penalty);
        } catch (const std::exception&) {
            std::cerr << "qalam: --overlap-penalty must be an integer or inf\n";
            return kTextError;
        }
    }

    try {
        if (*shape) return cmd_shape(opt);
        if (*justify) return cmd_justify(opt);
        if (*render) return cmd_render(opt);
        return cmd_fontlint(opt);
    } catch (const TextFailure& f) {
        report_error(opt, f.error);
        return kTextError;
    } catch (const Error& e) {
        report_error(opt, e);
        return exit_code_for(e.code());
    }
}
