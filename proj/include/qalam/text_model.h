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

#ifndef QALAM_TEXT_MODEL_H
#define QALAM_TEXT_MODEL_H

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qalam {

using CodePoint = char32_t;

inline constexpr CodePoint kTatweel = 0x0640;
inline constexpr CodePoint kSpace = 0x0020;
inline constexpr CodePoint kFathatan = 0x064B;
inline constexpr CodePoint kFatha = 0x064E;
inline constexpr CodePoint kShadda = 0x0651;
inline constexpr CodePoint kLam = 0x0644;
inline constexpr CodePoint kAlef = 0x0627;

enum class CharClass { Letter, Diacritic, Tatweel, Space, Other };
enum class JoiningClass { Dual, Right, None };
enum class DotPosition { None, Above, Below };
enum class MassClass { Light, Medium, Heavy };
enum class Form { Isolated, Initial, Medial, Final };
enum class MarkPlacement { Above, Below, Through };
enum class MarkCategory { Language, Aesthetic, Explanatory };

std::string_view to_string(CharClass c);
std::string_view to_string(JoiningClass c);
std::string_view to_string(DotPosition p);
std::string_view to_string(MassClass m);
std::string_view to_string(Form f);
std::string_view to_string(MarkPlacement p);
std::string_view to_string(MarkCategory c);

// Parsers for the tokens above; return nullopt on an unknown token.
std::optional<JoiningClass> joining_class_from(std::string_view s);
std::optional<DotPosition> dot_position_from(std::string_view s);
std::optional<MassClass> mass_class_from(std::string_view s);
std::optional<Form> form_from(std::string_view s);
std::optional<MarkPlacement> mark_placement_from(std::string_view s);
std::optional<MarkCategory> mark_category_from(std::string_view s);

// Forms a letter of the given joining class can take.
std::vector<Form> valid_forms(JoiningClass joining);

struct Dots {
    int count = 0;
    DotPosition position = DotPosition::None;

    bool operator==(const Dots&) const = default;
};

struct LetterRecord {
    CodePoint code_point = 0;
    JoiningClass joining = JoiningClass::None;
    Dots dots;
    std::string skeleton;     // dotless base family (Muhmal form)
    int stretch_class = 0;    // 0 = never stretchable
    MassClass mass = MassClass::Light;
    bool extension = false;   // registered outside U+0621..U+064A

    bool operator==(const LetterRecord&) const = default;
};

struct DiacriticRecord {
    CodePoint code_point = 0;
    MarkPlacement placement = MarkPlacement::Above;
    MarkCategory category = MarkCategory::Language;
    bool elongatable = false;
    // Vowel marks are mutually exclusive within a cluster; Shadda is not a vowel.
    bool vowel = false;

    bool operator==(const DiacriticRecord&) const = default;
};

/// Registry of letter and diacritic properties.
///
/// Immutable after construction. The built-in table covers U+0621..U+0652;
/// extension letters are added through the JSON table format
/// (schema "qalam-text/1", see docs/text-table.md).
class TextModel {
public:
    static const TextModel& builtin();

    // Throws Error{Parse|Schema|Range}.
    static TextModel from_json(std::string_view source);
    std::string to_json() const;

    // Built-in table plus the letters/diacritics described in `source`.
    static TextModel builtin_with(std::string_view source);

    CharClass classify(CodePoint cp) const;
    const LetterRecord* letter(CodePoint cp) const;
    const DiacriticRecord* diacritic(CodePoint cp) const;

    const std::map<CodePoint, LetterRecord>& letters() const { return mLetters; }
    const std::map<CodePoint, DiacriticRecord>& diacritics() const { return mDiacritics; }

private:
    void add(LetterRecord r);
    void add(DiacriticRecord r);
    void merge_json(std::string_view source);

    std::map<CodePoint, LetterRecord> mLetters;
    std::map<CodePoint, DiacriticRecord> mDiacritics;
};

/// classify_codepoint over the built-in table.
CharClass classify_codepoint(CodePoint cp);

struct Cluster {
    LetterRecord base;
    std::vector<DiacriticRecord> marks;  // input order
    int stretch_hint = 0;                // tatweels typed after this cluster
    std::size_t word = 0;                // index of the word the cluster belongs to

    bool operator==(const Cluster&) const = default;
};

// Throws Error{LeadingMark|DuplicateMark|UnsupportedCharacter}.
std::vector<Cluster> decompose(std::u32string_view text, const TextModel& model = TextModel::builtin());

// Inverse of decompose for well-formed cluster sequences: single spaces between
// words, tatweels re-emitted after the marks of their cluster.
std::u32string flatten(std::span<const Cluster> clusters);

// Groups clusters by word index, preserving order.
std::vector<std::vector<Cluster>> split_words(std::span<const Cluster> clusters);

// Throws Error{EmptyWord}.
std::vector<Form> analyze_joining(std::span<const LetterRecord> letters);
std::vector<Form> analyze_joining(std::span<const Cluster> word);

}  // namespace qalam

#endif  // QALAM_TEXT_MODEL_H
