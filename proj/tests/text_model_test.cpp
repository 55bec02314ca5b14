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

#include <random>

#include "oracles/joining_oracle.h"
#include "qalam/error.h"
#include "qalam/text_model.h"
#include "qalam/utf8.h"
#include "support/test_support.h"

namespace qalam {
namespace {

std::u32string u(std::initializer_list<CodePoint> cps) { return std::u32string(cps); }

ErrorCode error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::Io;
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify_codepoint(0x0628), CharClass::Letter);
    EXPECT_EQ(classify_codepoint(0x064E), CharClass::Diacritic);
    EXPECT_EQ(classify_codepoint(0x0041), CharClass::Other);
    EXPECT_EQ(classify_codepoint(0x0640), CharClass::Tatweel);
    EXPECT_EQ(classify_codepoint(0x0020), CharClass::Space);
    EXPECT_EQ(classify_codepoint(0x0600), CharClass::Other);
}

TEST(Classify, BuiltinLettersCoverBasicBlock) {
    const auto& model = TextModel::builtin();
    int letters = 0;
    for (CodePoint cp = 0x0621; cp <= 0x064A; ++cp) {
        if (model.letter(cp)) ++letters;
    }
    EXPECT_EQ(letters, 36);
    for (CodePoint cp = 0x064B; cp <= 0x0652; ++cp) EXPECT_NE(model.diacritic(cp), nullptr);
    int elongatable = 0;
    for (const auto& [cp, d] : model.diacritics()) elongatable += d.elongatable;
    EXPECT_EQ(elongatable, 2);
    EXPECT_TRUE(model.diacritic(kFatha)->elongatable);
    EXPECT_TRUE(model.diacritic(kFathatan)->elongatable);
}

TEST(Decompose, GroupsMarksWithTheirBase) {
    const auto c = decompose(u({0x0628, kFatha, kAlef}));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].base.code_point, 0x0628u);
    ASSERT_EQ(c[0].marks.size(), 1u);
    EXPECT_EQ(c[0].marks[0].code_point, kFatha);
    EXPECT_EQ(c[1].base.code_point, kAlef);
    EXPECT_TRUE(c[1].marks.empty());
}

TEST(Decompose, ShaddaAndVowelShareACluster) {
    const auto c = decompose(u({0x0628, kShadda, kFatha}));
    ASSERT_EQ(c.size(), 1u);
    ASSERT_EQ(c[0].marks.size(), 2u);
    EXPECT_EQ(c[0].marks[0].code_point, kShadda);
    EXPECT_EQ(c[0].marks[1].code_point, kFatha);
}

TEST(Decompose, Errors) {
    EXPECT_EQ(error_of([] { decompose(u({kFatha, 0x0628})); }), ErrorCode::LeadingMark);
    EXPECT_EQ(error_of([] { decompose(u({0x0628, 0x0020, kFatha})); }), ErrorCode::LeadingMark);
    EXPECT_EQ(error_of([] { decompose(u({0x0628, kFatha, kFatha})); }), ErrorCode::DuplicateMark);
    EXPECT_EQ(error_of([] { decompose(u({0x0628, kFatha, 0x064F})); }), ErrorCode::DuplicateMark);
    EXPECT_EQ(error_of([] { decompose(u({0x0628, 0x0041})); }), ErrorCode::UnsupportedCharacter);
}

TEST(Decompose, TatweelBecomesAHint) {
    const auto c = decompose(u({0x0628, kTatweel, kTatweel, 0x0645}));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].stretch_hint, 2);
    EXPECT_EQ(c[1].stretch_hint, 0);
}

TEST(Decompose, WordsSplitOnSpaces) {
    const auto c = decompose(u({0x0628, 0x0020, 0x0020, 0x0645, 0x0020}));
    const auto words = split_words(c);
    ASSERT_EQ(words.size(), 2u);
    EXPECT_EQ(words[1][0].word, 1u);
}

TEST(Decompose, EmptyInputHasNoClusters) { EXPECT_TRUE(decompose(U"").empty()); }

TEST(Decompose, FlattenRoundTripsRandomText) {
    std::mt19937 rng(7);
    const auto& model = TextModel::builtin();
    std::vector<CodePoint> letters;
    for (const auto& [cp, l] : model.letters()) letters.push_back(cp);
    const std::vector<CodePoint> vowels{0x064B, 0x064C, 0x064D, 0x064E, 0x064F, 0x0650, 0x0652};
    for (int trial = 0; trial < 2000; ++trial) {
        std::u32string text;
        const int words = 1 + static_cast<int>(rng() % 4);
        for (int w = 0; w < words; ++w) {
            if (w > 0) text += U' ';
            const int len = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < len; ++i) {
                text += letters[rng() % letters.size()];
                if (rng() % 3 == 0) text += kShadda;
                if (rng() % 2 == 0) text += vowels[rng() % vowels.size()];
                if (rng() % 8 == 0) text += kTatweel;
            }
        }
        const auto clusters = decompose(text);
        EXPECT_EQ(flatten(clusters), text);
        EXPECT_EQ(decompose(flatten(clusters)), clusters);
    }
}

TEST(Joining, Examples) {
    const auto& m = TextModel::builtin();
    auto forms = [&](std::initializer_list<CodePoint> cps) {
        std::vector<LetterRecord> ls;
        for (CodePoint cp : cps) ls.push_back(*m.letter(cp));
        return analyze_joining(ls);
    };
    EXPECT_EQ(forms({0x0628}), (std::vector<Form>{Form::Isolated}));
    EXPECT_EQ(forms({0x0628, 0x0627, 0x0628}), (std::vector<Form>{Form::Initial, Form::Final, Form::Isolated}));
    EXPECT_EQ(forms({0x0644, 0x0645, 0x062F}), (std::vector<Form>{Form::Initial, Form::Medial, Form::Final}));
    EXPECT_EQ(error_of([] { analyze_joining(std::vector<LetterRecord>{}); }), ErrorCode::EmptyWord);
}

TEST(Joining, JoiningClassesMatchReferenceData) {
    const auto ref = oracle::JoiningReference::load(test::source_path("tests/data/ArabicShaping-subset.txt").string());
    for (const auto& [cp, letter] : TextModel::builtin().letters()) {
        const char t = ref.type(cp);
        const JoiningClass expected = t == 'D' ? JoiningClass::Dual : t == 'R' ? JoiningClass::Right : JoiningClass::None;
        EXPECT_EQ(letter.joining, expected) << std::hex << static_cast<unsigned>(cp);
    }
}

TEST(Joining, ExhaustiveUpToLengthThreeAgainstOracle) {
    const auto ref = oracle::JoiningReference::load(test::source_path("tests/data/ArabicShaping-subset.txt").string());
    std::vector<LetterRecord> letters;
    for (const auto& [cp, l] : TextModel::builtin().letters()) letters.push_back(l);
    std::size_t mismatches = 0;
    std::vector<std::size_t> idx;
    const std::function<void(std::size_t)> walk = [&](std::size_t depth) {
        if (!idx.empty()) {
            std::vector<LetterRecord> word;
            std::vector<CodePoint> cps;
            for (std::size_t i : idx) {
                word.push_back(letters[i]);
                cps.push_back(letters[i].code_point);
            }
            if (analyze_joining(word) != ref.forms(cps)) ++mismatches;
        }
        if (depth == 3) return;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            idx.push_back(i);
            walk(depth + 1);
            idx.pop_back();
        }
    };
    walk(0);
    EXPECT_EQ(mismatches, 0u);
}

TEST(Joining, FormsAreAlwaysValidForTheLetter) {
    std::mt19937 rng(11);
    std::vector<LetterRecord> letters;
    for (const auto& [cp, l] : TextModel::builtin().letters()) letters.push_back(l);
    for (int trial = 0; trial < 5000; ++trial) {
        std::vector<LetterRecord> word(1 + rng() % 8);
        for (auto& l : word) l = letters[rng() % letters.size()];
        const auto forms = analyze_joining(word);
        ASSERT_EQ(forms.size(), word.size());
        for (std::size_t i = 0; i < word.size(); ++i) {
            const auto valid = valid_forms(word[i].joining);
            EXPECT_NE(std::find(valid.begin(), valid.end(), forms[i]), valid.end());
        }
    }
}

TEST(TextTable, BuiltinRoundTripsThroughJson) {
    const auto& m = TextModel::builtin();
    const TextModel back = TextModel::from_json(m.to_json());
    EXPECT_EQ(back.letters(), m.letters());
    EXPECT_EQ(back.diacritics(), m.diacritics());
}

TEST(TextTable, ExtensionLettersMustBeFlagged) {
    const std::string peh = R"({"schema": "qalam-text/1", "letters": [{"code_point": "U+067E", "joining": "dual",
        "dots": {"count": 3, "position": "below"}, "skeleton": "beh", "stretch_class": 2, "mass": "light"%s}]})";
    auto with = [&](const std::string& extra) {
        std::string s = peh;
        s.replace(s.find("%s"), 2, extra);
        return s;
    };
    EXPECT_EQ(error_of([&] { TextModel::builtin_with(with("")); }), ErrorCode::Range);
    const TextModel model = TextModel::builtin_with(with(R"(, "extension": true)"));
    ASSERT_NE(model.letter(0x067E), nullptr);
    EXPECT_EQ(model.classify(0x067E), CharClass::Letter);
    EXPECT_EQ(error_of([] { TextModel::from_json("not json"); }), ErrorCode::Parse);
}

TEST(TextTable, OnlyFathaAndFathatanMayBeElongatable) {
    const std::string damma = R"({"schema": "qalam-text/1", "diacritics": [{"code_point": "U+064F",
        "placement": "above", "category": "language", "elongatable": true}]})";
    EXPECT_EQ(error_of([&] { TextModel::builtin_with(damma); }), ErrorCode::Range);
}

TEST(Utf8, RoundTripAndRejectsMalformedInput) {
    const std::u32string text = U"بَ x \U0001F600";
    EXPECT_EQ(utf8_decode(utf8_encode(text)), text);
    EXPECT_EQ(error_of([] { utf8_decode("\xC0\xAF"); }), ErrorCode::Parse);
    EXPECT_EQ(error_of([] { utf8_decode("\xED\xA0\x80"); }), ErrorCode::Parse);
    EXPECT_EQ(error_of([] { utf8_decode("\xD8"); }), ErrorCode::Parse);
}

}  // namespace
}  // namespace qalam
