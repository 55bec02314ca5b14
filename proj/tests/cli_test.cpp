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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "oracles/break_oracle.h"
#include "qalam/justifier.h"
#include "support/test_support.h"

namespace qalam {
namespace {

using nlohmann::json;
using test::run_command;

std::string quote(const std::string& s) { return "'" + s + "'"; }

std::string cli(const std::string& args) {
    return test::cli_path() + " " + args + " --font " + quote(test::demo_font_path());
}

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("qalam-cli-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}

TEST(CliShape, LamAlefIsOneGlyphRecord) {
    const auto r = run_command(cli("shape --text 'لا'") + " 2>/dev/null");
    ASSERT_EQ(r.exit_code, 0);
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc["schema"], "qalam-layout/1");
    ASSERT_EQ(doc["lines"].size(), 1u);
    ASSERT_EQ(doc["lines"][0]["glyphs"].size(), 1u);
    EXPECT_EQ(doc["lines"][0]["glyphs"][0]["glyph"], "lam_alef.isol");
}

TEST(CliShape, EmptyTextGivesNoLines) {
    const auto r = run_command(cli("shape --text ''"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_TRUE(json::parse(r.out)["lines"].empty());
}

TEST(CliShape, ExitCodes) {
    EXPECT_EQ(run_command(test::cli_path() + " shape --text 'ب' --font /nonexistent.json 2>/dev/null").exit_code, 1);
    EXPECT_EQ(run_command(cli("shape --text 'abc'") + " 2>/dev/null").exit_code, 2);
    EXPECT_EQ(run_command(cli("shape --text 'َب'") + " 2>/dev/null").exit_code, 2);
    EXPECT_EQ(run_command(cli("shape --text-file /nonexistent.txt") + " 2>/dev/null").exit_code, 2);
    EXPECT_EQ(run_command(cli("shape") + " 2>/dev/null").exit_code, 2);
    EXPECT_EQ(run_command(cli("shape --text 'ب' --bogus") + " 2>/dev/null").exit_code, 2);
}

TEST(CliShape, JsonErrorsGoToStdout) {
    const auto r = run_command(cli("shape --text 'abc' --format json-errors") + " 2>/dev/null");
    EXPECT_EQ(r.exit_code, 2);
    const json errors = json::parse(r.out);
    ASSERT_EQ(errors.size(), 1u);
    EXPECT_EQ(errors[0]["code"], "UnsupportedCharacter");
    EXPECT_EQ(errors[0]["severity"], "error");
}

TEST(CliShape, FontFromEnvironment) {
    const auto r = run_command("QALAM_FONT_PATH=" + quote(test::demo_font_path()) + " " + test::cli_path() +
                               " shape --text 'بَ' 2>/dev/null");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(json::parse(r.out)["font_id"], "chawki-demo");
}

TEST(CliShape, DiagnosticsStayOffStdout) {
    const auto r = run_command(cli("shape --text 'بم'") + " 2>/dev/null");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NO_THROW(json::parse(r.out));
}

TEST(CliJustify, MatchesGolden) {
    const auto r = run_command(cli("justify --width 7200 --algorithm optimum --text-file " +
                                   quote(test::source_path("data/corpus/paragraph.txt").string())) +
                               " 2>/dev/null");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, test::read_text(test::source_path("tests/golden/paragraph_w7200.json")));
}

TEST(CliJustify, GoldenIsTheExhaustiveOptimum) {
    const json golden = json::parse(test::read_text(test::source_path("tests/golden/paragraph_w7200.json")));
    const auto words = test::shape_text(test::read_text(test::source_path("data/corpus/paragraph.txt")), test::demo_font());
    ASSERT_LE(words.size(), 12u);
    std::vector<WordBox> boxes;
    for (const auto& w : words) boxes.push_back(word_box(w, test::demo_font(), KashidaPolicy::Single));
    const oracle::OracleResult best = oracle::exhaustive_optimum(boxes, 7200, test::demo_font().glue, BreakParams{});
    ASSERT_TRUE(best.feasible);
    EXPECT_EQ(golden["total_demerits"].get<Demerits>(), best.total);
    std::vector<std::size_t> breaks;
    std::size_t seen = 0;
    for (const auto& line : golden["lines"]) {
        seen += line["words"].size();
        breaks.push_back(seen);
        EXPECT_EQ(line["width"].get<Units>() == 7200 || &line == &golden["lines"].back(), true);
    }
    EXPECT_EQ(breaks, best.breaks);
}

TEST(CliJustify, ImpossibleMeasure) {
    const auto r = run_command(cli("justify --width 1 --text 'كتب'") + " 2>/dev/null");
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_EQ(run_command(cli("justify --width 0 --text 'كتب'") + " 2>/dev/null").exit_code, 2);
    EXPECT_EQ(run_command(cli("justify --text 'كتب'") + " 2>/dev/null").exit_code, 2);
}

TEST(CliJustify, OptimumNeverWorseThanGreedyViaStats) {
    auto total = [](const std::string& algorithm, Units width) {
        const auto r = run_command(cli("justify --stats --width " + std::to_string(width) + " --algorithm " + algorithm +
                                       " --text-file " + quote(test::source_path("data/corpus/demo.txt").string())) +
                                   " 2>&1 >/dev/null | grep '^algorithm='");
        const auto pos = r.out.find("total_demerits=");
        return std::stoll(r.out.substr(pos + 15));
    };
    for (Units width : {4000, 5500, 7200}) EXPECT_LE(total("optimum", width), total("greedy", width)) << width;
}

TEST(CliRender, RoundTripsShapeOutput) {
    const auto layout = temp_file("layout.json");
    ASSERT_EQ(run_command(cli("shape --text 'بَ'") + " 2>/dev/null > " + quote(layout.string())).exit_code, 0);
    const auto a = run_command(test::cli_path() + " render --layout " + quote(layout.string()));
    const auto b = run_command(test::cli_path() + " render < " + quote(layout.string()));
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("<svg"), std::string::npos);
}

TEST(CliRender, MalformedLayout) {
    const auto bad = temp_file("bad.json");
    test::write_text(bad, "{\"schema\": \"nope\"}");
    EXPECT_EQ(run_command(test::cli_path() + " render --layout " + quote(bad.string()) + " 2>/dev/null").exit_code, 2);
    test::write_text(bad, "not json");
    EXPECT_EQ(run_command(test::cli_path() + " render --layout " + quote(bad.string()) + " 2>/dev/null").exit_code, 2);
}

TEST(CliFontlint, DemoFontAndFixtures) {
    EXPECT_EQ(run_command(cli("fontlint")).exit_code, 0);
    const json fixture = json::parse(test::read_text(test::source_path("tests/fixtures/lint/missing_anchor.json")));
    const auto font = temp_file("missing_anchor.json");
    test::write_text(font, test::patched_font_json(fixture["patch"].dump()));
    const auto r = run_command(test::cli_path() + " fontlint --format json --font " + quote(font.string()));
    EXPECT_EQ(r.exit_code, 4);
    const json diagnostics = json::parse(r.out);
    ASSERT_EQ(diagnostics.size(), 1u);
    EXPECT_EQ(diagnostics[0]["code"], "MissingAnchor");
    const auto junk = temp_file("junk.json");
    test::write_text(junk, "this is not json");
    EXPECT_EQ(run_command(test::cli_path() + " fontlint --font " + quote(junk.string()) + " 2>/dev/null").exit_code, 1);
}

}  // namespace
}  // namespace qalam
