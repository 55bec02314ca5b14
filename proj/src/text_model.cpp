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

#include "qalam/text_model.h"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "qalam/error.h"

namespace qalam {

namespace {

using nlohmann::json;

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view s, const std::pair<E, std::string_view> (&table)[N]) {
    for (const auto& [value, name] : table) {
        if (name == s) return value;
    }
    return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(E value, const std::pair<E, std::string_view> (&table)[N]) {
    for (const auto& [v, name] : table) {
        if (v == value) return name;
    }
    return "?";
}

constexpr std::pair<CharClass, std::string_view> kCharClassNames[] = {
        {CharClass::Letter, "letter"},   {CharClass::Diacritic, "diacritic"},
        {CharClass::Tatweel, "tatweel"}, {CharClass::Space, "space"},
        {CharClass::Other, "other"}};
constexpr std::pair<JoiningClass, std::string_view> kJoiningNames[] = {
        {JoiningClass::Dual, "dual"}, {JoiningClass::Right, "right"}, {JoiningClass::None, "none"}};
constexpr std::pair<DotPosition, std::string_view> kDotNames[] = {
        {DotPosition::None, "none"}, {DotPosition::Above, "above"}, {DotPosition::Below, "below"}};
constexpr std::pair<MassClass, std::string_view> kMassNames[] = {
        {MassClass::Light, "light"}, {MassClass::Medium, "medium"}, {MassClass::Heavy, "heavy"}};
constexpr std::pair<Form, std::string_view> kFormNames[] = {
        {Form::Isolated, "isolated"}, {Form::Initial, "initial"},
        {Form::Medial, "medial"},     {Form::Final, "final"}};
constexpr std::pair<MarkPlacement, std::string_view> kPlacementNames[] = {
        {MarkPlacement::Above, "above"}, {MarkPlacement::Below, "below"},
        {MarkPlacement::Through, "through"}};
constexpr std::pair<MarkCategory, std::string_view> kCategoryNames[] = {
        {MarkCategory::Language, "language"}, {MarkCategory::Aesthetic, "aesthetic"},
        {MarkCategory::Explanatory, "explanatory"}};

struct BuiltinLetter {
    CodePoint cp;
    JoiningClass joining;
    int dots;
    DotPosition dot_position;
    const char* skeleton;
    int stretch;
    MassClass mass;
};

constexpr auto D = JoiningClass::Dual;
constexpr auto R = JoiningClass::Right;
constexpr auto U = JoiningClass::None;
constexpr auto NoDots = DotPosition::None;
constexpr auto Up = DotPosition::Above;
constexpr auto Down = DotPosition::Below;
constexpr auto L = MassClass::Light;
constexpr auto M = MassClass::Medium;
constexpr auto H = MassClass::Heavy;

// Joining classes follow Unicode ArabicShaping.txt. Stretch ranks: 3 for the
// long-bodied Seen/Sad families, 2 for the flat-stroke letters, 1 for round
// letters, 0 where no connecting stroke exists to elongate.
constexpr BuiltinLetter kBuiltinLetters[] = {
        {0x0621, U, 0, NoDots, "hamza", 0, L},
        {0x0622, R, 0, NoDots, "alef_madda", 0, H},
        {0x0623, R, 0, NoDots, "alef_hamza_above", 0, H},
        {0x0624, R, 0, NoDots, "waw_hamza", 0, M},
        {0x0625, R, 0, NoDots, "alef_hamza_below", 0, H},
        {0x0626, D, 0, NoDots, "yeh_hamza", 2, M},
        {0x0627, R, 0, NoDots, "alef", 0, H},
        {0x0628, D, 1, Down, "beh", 2, L},
        {0x0629, R, 2, Up, "teh_marbuta", 0, L},
        {0x062A, D, 2, Up, "beh", 2, L},
        {0x062B, D, 3, Up, "beh", 2, L},
        {0x062C, D, 1, Down, "hah", 1, M},
        {0x062D, D, 0, NoDots, "hah", 1, M},
        {0x062E, D, 1, Up, "hah", 1, M},
        {0x062F, R, 0, NoDots, "dal", 0, L},
        {0x0630, R, 1, Up, "dal", 0, L},
        {0x0631, R, 0, NoDots, "reh", 0, L},
        {0x0632, R, 1, Up, "reh", 0, L},
        {0x0633, D, 0, NoDots, "seen", 3, M},
        {0x0634, D, 3, Up, "seen", 3, M},
        {0x0635, D, 0, NoDots, "sad", 3, H},
        {0x0636, D, 1, Up, "sad", 3, H},
        {0x0637, D, 0, NoDots, "tah", 1, H},
        {0x0638, D, 1, Up, "tah", 1, H},
        {0x0639, D, 0, NoDots, "ain", 1, M},
        {0x063A, D, 1, Up, "ain", 1, M},
        {0x0641, D, 1, Up, "feh", 2, M},
        {0x0642, D, 2, Up, "qaf", 2, M},
        {0x0643, D, 0, NoDots, "kaf", 2, H},
        {0x0644, D, 0, NoDots, "lam", 2, H},
        {0x0645, D, 0, NoDots, "meem", 1, L},
        {0x0646, D, 1, Up, "noon", 2, M},
        {0x0647, D, 0, NoDots, "heh", 1, L},
        {0x0648, R, 0, NoDots, "waw", 0, M},
        {0x0649, D, 0, NoDots, "yeh", 2, M},
        {0x064A, D, 2, Down, "yeh", 2, M},
};

struct BuiltinMark {
    CodePoint cp;
    MarkPlacement placement;
    bool vowel;
};

constexpr BuiltinMark kBuiltinMarks[] = {
        {0x064B, MarkPlacement::Above, true},   // Fathatan
        {0x064C, MarkPlacement::Above, true},   // Dammatan
        {0x064D, MarkPlacement::Below, true},   // Kasratan
        {0x064E, MarkPlacement::Above, true},   // Fatha
        {0x064F, MarkPlacement::Above, true},   // Damma
        {0x0650, MarkPlacement::Below, true},   // Kasra
        {0x0651, MarkPlacement::Above, false},  // Shadda
        {0x0652, MarkPlacement::Above, true},   // Sukun
};

bool is_elongatable(CodePoint cp) { return cp == kFatha || cp == kFathatan; }

std::string format_cp(CodePoint cp) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
    return buf;
}

CodePoint parse_cp(const json& j) {
    if (!j.is_string()) throw Error(ErrorCode::Schema, "code_point must be a \"U+XXXX\" string");
    const auto s = j.get<std::string>();
    if (s.size() < 3 || s.rfind("U+", 0) != 0) {
        throw Error(ErrorCode::Schema, "bad code point '" + s + "'");
    }
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s.substr(2), &used, 16);
    } catch (const std::exception&) {
        throw Error(ErrorCode::Schema, "bad code point '" + s + "'");
    }
    if (used != s.size() - 2 || v > 0x10FFFF) throw Error(ErrorCode::Schema, "bad code point '" + s + "'");
    return static_cast<CodePoint>(v);
}

const json& field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::Schema, std::string("missing field '") + key + "'");
    return *it;
}

template <typename E>
E enum_field(const json& obj, const char* key, std::optional<E> (*parse)(std::string_view)) {
    const json& v = field(obj, key);
    if (!v.is_string()) throw Error(ErrorCode::Schema, std::string("field '") + key + "' must be a string");
    auto parsed = parse(v.get<std::string>());
    if (!parsed) throw Error(ErrorCode::Schema, std::string("bad value for '") + key + "'");
    return *parsed;
}

void validate(const LetterRecord& r) {
    if ((r.dots.count == 0) != (r.dots.position == DotPosition::None) || r.dots.count < 0 || r.dots.count > 3) {
        throw Error(ErrorCode::Range, "inconsistent dot pattern for " + format_cp(r.code_point));
    }
    const bool in_block = r.code_point >= 0x0621 && r.code_point <= 0x064A;
    if (!in_block && !r.extension) {
        throw Error(ErrorCode::Range, format_cp(r.code_point) + " is outside U+0621..U+064A and not marked as extension");
    }
    if (r.stretch_class < 0) throw Error(ErrorCode::Range, "negative stretch_class for " + format_cp(r.code_point));
    if (r.skeleton.empty()) throw Error(ErrorCode::Schema, "empty skeleton for " + format_cp(r.code_point));
}

void validate(const DiacriticRecord& r) {
    if (r.elongatable != is_elongatable(r.code_point)) {
        throw Error(ErrorCode::Range, "only Fatha and Fathatan are elongatable (" + format_cp(r.code_point) + ")");
    }
}

}  // namespace

std::string_view to_string(CharClass c) { return name_of(c, kCharClassNames); }
std::string_view to_string(JoiningClass c) { return name_of(c, kJoiningNames); }
std::string_view to_string(DotPosition p) { return name_of(p, kDotNames); }
std::string_view to_string(MassClass m) { return name_of(m, kMassNames); }
std::string_view to_string(Form f) { return name_of(f, kFormNames); }
std::string_view to_string(MarkPlacement p) { return name_of(p, kPlacementNames); }
std::string_view to_string(MarkCategory c) { return name_of(c, kCategoryNames); }

std::optional<JoiningClass> joining_class_from(std::string_view s) { return lookup(s, kJoiningNames); }
std::optional<DotPosition> dot_position_from(std::string_view s) { return lookup(s, kDotNames); }
std::optional<MassClass> mass_class_from(std::string_view s) { return lookup(s, kMassNames); }
std::optional<Form> form_from(std::string_view s) { return lookup(s, kFormNames); }
std::optional<MarkPlacement> mark_placement_from(std::string_view s) { return lookup(s, kPlacementNames); }
std::optional<MarkCategory> mark_category_from(std::string_view s) { return lookup(s, kCategoryNames); }

std::vector<Form> valid_forms(JoiningClass joining) {
    switch (joining) {
        case JoiningClass::Dual: return {Form::Isolated, Form::Initial, Form::Medial, Form::Final};
        case JoiningClass::Right: return {Form::Isolated, Form::Final};
        case JoiningClass::None: return {Form::Isolated};
    }
    return {};
}

const TextModel& TextModel::builtin() {
    static const TextModel model = [] {
        TextModel m;
        for (const auto& b : kBuiltinLetters) {
            m.add(LetterRecord{b.cp, b.joining, Dots{b.dots, b.dot_position}, b.skeleton, b.stretch, b.mass, false});
        }
        for (const auto& b : kBuiltinMarks) {
            m.add(DiacriticRecord{b.cp, b.placement, MarkCategory::Language, is_elongatable(b.cp), b.vowel});
        }
        return m;
    }();
    return model;
}

void TextModel::add(LetterRecord r) {
    validate(r);
    mDiacritics.erase(r.code_point);
    mLetters[r.code_point] = std::move(r);
}

void TextModel::add(DiacriticRecord r) {
    validate(r);
    mLetters.erase(r.code_point);
    mDiacritics[r.code_point] = r;
}

void TextModel::merge_json(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::Schema, "text table must be a JSON object");
    if (field(doc, "schema") != "qalam-text/1") throw Error(ErrorCode::Schema, "unsupported schema version");
    if (auto it = doc.find("letters"); it != doc.end()) {
        for (const json& l : *it) {
            LetterRecord r;
            r.code_point = parse_cp(field(l, "code_point"));
            r.joining = enum_field(l, "joining", &joining_class_from);
            const json& dots = field(l, "dots");
            r.dots.count = field(dots, "count").get<int>();
            r.dots.position = enum_field(dots, "position", &dot_position_from);
            r.skeleton = field(l, "skeleton").get<std::string>();
            r.stretch_class = field(l, "stretch_class").get<int>();
            r.mass = enum_field(l, "mass", &mass_class_from);
            r.extension = l.value("extension", false);
            add(std::move(r));
        }
    }
    if (auto it = doc.find("diacritics"); it != doc.end()) {
        for (const json& d : *it) {
            DiacriticRecord r;
            r.code_point = parse_cp(field(d, "code_point"));
            r.placement = enum_field(d, "placement", &mark_placement_from);
            r.category = enum_field(d, "category", &mark_category_from);
            r.elongatable = field(d, "elongatable").get<bool>();
            r.vowel = d.value("vowel", false);
            add(r);
        }
    }
}

TextModel TextModel::from_json(std::string_view source) {
    TextModel model;
    try {
        model.merge_json(source);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Schema, e.what());
    }
    return model;
}

TextModel TextModel::builtin_with(std::string_view source) {
    TextModel model = builtin();
    try {
        model.merge_json(source);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Schema, e.what());
    }
    return model;
}

std::string TextModel::to_json() const {
    json doc;
    doc["schema"] = "qalam-text/1";
    doc["letters"] = json::array();
    for (const auto& [cp, r] : mLetters) {
        json l{{"code_point", format_cp(cp)},
               {"joining", to_string(r.joining)},
               {"dots", {{"count", r.dots.count}, {"position", to_string(r.dots.position)}}},
               {"skeleton", r.skeleton},
               {"stretch_class", r.stretch_class},
               {"mass", to_string(r.mass)}};
        if (r.extension) l["extension"] = true;
        doc["letters"].push_back(std::move(l));
    }
    doc["diacritics"] = json::array();
    for (const auto& [cp, r] : mDiacritics) {
        doc["diacritics"].push_back({{"code_point", format_cp(cp)},
                                     {"placement", to_string(r.placement)},
                                     {"category", to_string(r.category)},
                                     {"elongatable", r.elongatable},
                                     {"vowel", r.vowel}});
    }
    return doc.dump(2) + "\n";
}

CharClass TextModel::classify(CodePoint cp) const {
    if (mLetters.count(cp)) return CharClass::Letter;
    if (mDiacritics.count(cp)) return CharClass::Diacritic;
    if (cp == kTatweel) return CharClass::Tatweel;
    if (cp == kSpace) return CharClass::Space;
    return CharClass::Other;
}

const LetterRecord* TextModel::letter(CodePoint cp) const {
    auto it = mLetters.find(cp);
    return it == mLetters.end() ? nullptr : &it->second;
}

const DiacriticRecord* TextModel::diacritic(CodePoint cp) const {
    auto it = mDiacritics.find(cp);
    return it == mDiacritics.end() ? nullptr : &it->second;
}

CharClass classify_codepoint(CodePoint cp) { return TextModel::builtin().classify(cp); }

std::vector<Cluster> decompose(std::u32string_view text, const TextModel& model) {
    std::vector<Cluster> clusters;
    std::size_t word = 0;
    bool in_word = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const CodePoint cp = text[i];
        switch (model.classify(cp)) {
            case CharClass::Letter:
                clusters.push_back(Cluster{*model.letter(cp), {}, 0, word});
                in_word = true;
                break;
            case CharClass::Diacritic: {
                if (!in_word) throw Error(ErrorCode::LeadingMark, format_cp(cp) + " at offset " + std::to_string(i));
                const DiacriticRecord& mark = *model.diacritic(cp);
                auto& marks = clusters.back().marks;
                const bool clash = std::any_of(marks.begin(), marks.end(), [&](const DiacriticRecord& m) {
                    return m.code_point == cp || (m.vowel && mark.vowel);
                });
                if (clash) throw Error(ErrorCode::DuplicateMark, format_cp(cp) + " at offset " + std::to_string(i));
                marks.push_back(mark);
                break;
            }
            case CharClass::Tatweel:
                if (!in_word) throw Error(ErrorCode::LeadingMark, "tatweel at offset " + std::to_string(i));
                ++clusters.back().stretch_hint;
                break;
            case CharClass::Space:
                if (in_word) {
                    ++word;
                    in_word = false;
                }
                break;
            case CharClass::Other:
                throw Error(ErrorCode::UnsupportedCharacter, format_cp(cp) + " at offset " + std::to_string(i));
        }
    }
    return clusters;
}

std::u32string flatten(std::span<const Cluster> clusters) {
    std::u32string out;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        const Cluster& c = clusters[i];
        if (i > 0 && c.word != clusters[i - 1].word) out.push_back(kSpace);
        out.push_back(c.base.code_point);
        for (const auto& m : c.marks) out.push_back(m.code_point);
        out.append(static_cast<std::size_t>(c.stretch_hint), kTatweel);
    }
    return out;
}

std::vector<std::vector<Cluster>> split_words(std::span<const Cluster> clusters) {
    std::vector<std::vector<Cluster>> words;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (i == 0 || clusters[i].word != clusters[i - 1].word) words.emplace_back();
        words.back().push_back(clusters[i]);
    }
    return words;
}

std::vector<Form> analyze_joining(std::span<const LetterRecord> letters) {
    if (letters.empty()) throw Error(ErrorCode::EmptyWord, "analyze_joining on an empty word");
    auto joins_forward = [](const LetterRecord& l) { return l.joining == JoiningClass::Dual; };
    auto joins_backward = [](const LetterRecord& l) { return l.joining != JoiningClass::None; };
    std::vector<Form> forms(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i) {
        const bool back = i > 0 && joins_forward(letters[i - 1]) && joins_backward(letters[i]);
        const bool fwd = i + 1 < letters.size() && joins_forward(letters[i]) && joins_backward(letters[i + 1]);
        forms[i] = back ? (fwd ? Form::Medial : Form::Final) : (fwd ? Form::Initial : Form::Isolated);
    }
    return forms;
}

std::vector<Form> analyze_joining(std::span<const Cluster> word) {
    std::vector<LetterRecord> letters;
    letters.reserve(word.size());
    for (const auto& c : word) letters.push_back(c.base);
    return analyze_joining(letters);
}

}  // namespace qalam
