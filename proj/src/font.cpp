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

#include "qalam/font.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qalam/error.h"

namespace qalam {

namespace {

using nlohmann::json;

constexpr std::string_view kSchema = "qalam-font/1";

constexpr std::pair<SizeVariant, std::string_view> kVariantNames[] = {
        {SizeVariant::Normal, "normal"}, {SizeVariant::Medium, "medium"}, {SizeVariant::Large, "large"}};


std::string format_cp(CodePoint cp) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
    return buf;
}

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::Schema, what); }

const json& req(const json& obj, std::string_view key, std::string_view where) {
    if (!obj.is_object()) schema_error(std::string(where) + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(std::string(where) + ": missing field '" + std::string(key) + "'");
    return *it;
}

Units to_units(const json& j, std::string_view where) {
    if (!j.is_number_integer()) schema_error(std::string(where) + ": expected an integer");
    return j.get<Units>();
}

std::string to_str(const json& j, std::string_view where) {
    if (!j.is_string()) schema_error(std::string(where) + ": expected a string");
    return j.get<std::string>();
}

Point parse_point(const json& j, std::string_view where) {
    if (!j.is_array() || j.size() != 2) schema_error(std::string(where) + ": expected [x, y]");
    return {to_units(j[0], where), to_units(j[1], where)};
}

Rect parse_rect(const json& j, std::string_view where) {
    if (!j.is_array() || j.size() != 4) schema_error(std::string(where) + ": expected [x_min, y_min, x_max, y_max]");
    Rect r{to_units(j[0], where), to_units(j[1], where), to_units(j[2], where), to_units(j[3], where)};
    if (!r.valid()) throw Error(ErrorCode::Range, std::string(where) + ": inverted ink box");
    return r;
}

json point_json(Point p) { return json::array({p.x, p.y}); }
json rect_json(const Rect& r) { return json::array({r.x_min, r.y_min, r.x_max, r.y_max}); }

template <typename E, std::size_t N>
E parse_enum(const json& j, const std::pair<E, std::string_view> (&table)[N], std::string_view where) {
    const std::string s = to_str(j, where);
    for (const auto& [v, name] : table) {
        if (name == s) return v;
    }
    schema_error(std::string(where) + ": unknown token '" + s + "'");
}

template <typename E>
E parse_token(const json& j, std::optional<E> (*parse)(std::string_view), std::string_view where) {
    auto v = parse(to_str(j, where));
    if (!v) schema_error(std::string(where) + ": unknown token '" + j.get<std::string>() + "'");
    return *v;
}

CodePoint parse_cp(const std::string& s) {
    if (s.size() < 3 || s.rfind("U+", 0) != 0) schema_error("bad code point key '" + s + "'");
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s.substr(2), &used, 16);
    } catch (const std::exception&) {
        schema_error("bad code point key '" + s + "'");
    }
    if (used != s.size() - 2) schema_error("bad code point key '" + s + "'");
    return static_cast<CodePoint>(v);
}

AnchorTable parse_anchors(const json& j, std::string_view where) {
    AnchorTable anchors;
    if (!j.is_object()) schema_error(std::string(where) + ": anchors must be an object");
    for (const auto& [key, value] : j.items()) {
        auto cls = mark_placement_from(key);
        if (!cls) schema_error(std::string(where) + ": unknown attachment class '" + key + "'");
        anchors[*cls] = parse_point(value, where);
    }
    return anchors;
}

json anchors_json(const AnchorTable& anchors) {
    json j = json::object();
    for (const auto& [cls, p] : anchors) j[std::string(to_string(cls))] = point_json(p);
    return j;
}

std::vector<GlyphId> parse_ids(const json& j, std::string_view where) {
    if (!j.is_array()) schema_error(std::string(where) + ": expected an array of glyph ids");
    std::vector<GlyphId> ids;
    for (const auto& e : j) ids.push_back(to_str(e, where));
    return ids;
}

std::map<GlyphId, GlyphId> parse_id_map(const json& j, std::string_view where) {
    if (!j.is_object()) schema_error(std::string(where) + ": expected an object");
    std::map<GlyphId, GlyphId> m;
    for (const auto& [k, v] : j.items()) m[k] = to_str(v, where);
    return m;
}

std::set<GlyphId> parse_id_set(const json& j, std::string_view where) {
    auto ids = parse_ids(j, where);
    return {ids.begin(), ids.end()};
}

LookupRule parse_rule(const json& j, std::string_view where) {
    LookupRule rule;
    auto parsed_kind = lookup_kind_from(to_str(req(j, "kind", where), where));
    if (!parsed_kind) schema_error(std::string(where) + ": unknown lookup kind");
    const LookupKind kind = *parsed_kind;
    rule.feature = to_str(req(j, "feature", where), where);
    for (const auto& flag : req(j, "flags", where)) {
        if (to_str(flag, where) != "ignore_marks") schema_error(std::string(where) + ": unknown flag");
        rule.ignore_marks = true;
    }
    rule.coverage = CoverageTable(parse_ids(req(j, "coverage", where), where));
    switch (kind) {
        case LookupKind::SingleSub:
            rule.payload = SingleSub{parse_id_map(req(j, "map", where), where)};
            break;
        case LookupKind::MultipleSub: {
            MultipleSub p;
            for (const auto& [k, v] : req(j, "map", where).items()) p.map[k] = parse_ids(v, where);
            rule.payload = std::move(p);
            break;
        }
        case LookupKind::AlternateSub: {
            AlternateSub p;
            for (const auto& [k, v] : req(j, "alternates", where).items()) {
                p.alternates[k] = parse_ids(v, where);
                if (p.alternates[k].empty()) schema_error(std::string(where) + ": empty alternate list for " + k);
            }
            rule.payload = std::move(p);
            break;
        }
        case LookupKind::LigatureSub: {
            LigatureSub p;
            for (const auto& l : req(j, "ligatures", where)) {
                LigatureSpec spec{parse_ids(req(l, "components", where), where), to_str(req(l, "glyph", where), where)};
                if (spec.components.size() < 2) schema_error(std::string(where) + ": ligature needs two or more components");
                p.ligatures.push_back(std::move(spec));
            }
            rule.payload = std::move(p);
            break;
        }
        case LookupKind::ContextualSub:
            rule.payload = ContextualSub{parse_id_set(req(j, "before", where), where),
                                         parse_id_set(req(j, "after", where), where),
                                         parse_id_map(req(j, "map", where), where)};
            break;
        case LookupKind::SingleAdj: {
            SingleAdj p;
            for (const auto& [k, v] : req(j, "values", where).items()) {
                p.values[k] = ValueRecord{to_units(req(v, "dx", where), where), to_units(req(v, "dy", where), where),
                                          to_units(req(v, "advance", where), where)};
            }
            rule.payload = std::move(p);
            break;
        }
        case LookupKind::PairAdj: {
            PairAdj p;
            for (const auto& e : req(j, "pairs", where)) {
                p.advance[{to_str(req(e, "first", where), where), to_str(req(e, "second", where), where)}] =
                        to_units(req(e, "advance", where), where);
            }
            rule.payload = std::move(p);
            break;
        }
        case LookupKind::CursiveAttach: {
            CursiveAttach p;
            for (const auto& [k, v] : req(j, "anchors", where).items()) {
                CursiveAnchors a;
                if (v.contains("entry")) a.entry = parse_point(v["entry"], where);
                if (v.contains("exit")) a.exit = parse_point(v["exit"], where);
                p.anchors[k] = a;
            }
            rule.payload = std::move(p);
            break;
        }
        case LookupKind::MarkToBase:
            rule.payload = MarkToBase{parse_id_set(req(j, "bases", where), where)};
            break;
        case LookupKind::MarkToLigature:
            rule.payload = MarkToLigature{parse_id_set(req(j, "ligatures", where), where)};
            break;
        case LookupKind::MarkToMark:
            rule.payload = MarkToMark{parse_id_set(req(j, "base_marks", where), where)};
            break;
    }
    return rule;
}

template <typename Range>
json ids_json(const Range& ids) {
    json a = json::array();
    for (const auto& id : ids) a.push_back(id);
    return a;
}

json rule_json(const LookupRule& rule) {
    json j;
    j["kind"] = to_string(rule.kind());
    j["feature"] = rule.feature;
    j["flags"] = rule.ignore_marks ? json::array({"ignore_marks"}) : json::array();
    j["coverage"] = ids_json(rule.coverage.glyphs());
    std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, SingleSub>) {
                    j["map"] = p.map;
                } else if constexpr (std::is_same_v<T, MultipleSub>) {
                    j["map"] = p.map;
                } else if constexpr (std::is_same_v<T, AlternateSub>) {
                    j["alternates"] = p.alternates;
                } else if constexpr (std::is_same_v<T, LigatureSub>) {
                    j["ligatures"] = json::array();
                    for (const auto& l : p.ligatures) {
                        j["ligatures"].push_back({{"components", l.components}, {"glyph", l.glyph}});
                    }
                } else if constexpr (std::is_same_v<T, ContextualSub>) {
                    j["before"] = ids_json(p.before);
                    j["after"] = ids_json(p.after);
                    j["map"] = p.map;
                } else if constexpr (std::is_same_v<T, SingleAdj>) {
                    j["values"] = json::object();
                    for (const auto& [g, v] : p.values) {
                        j["values"][g] = {{"dx", v.dx}, {"dy", v.dy}, {"advance", v.advance}};
                    }
                } else if constexpr (std::is_same_v<T, PairAdj>) {
                    j["pairs"] = json::array();
                    for (const auto& [pair, adv] : p.advance) {
                        j["pairs"].push_back({{"first", pair.first}, {"second", pair.second}, {"advance", adv}});
                    }
                } else if constexpr (std::is_same_v<T, CursiveAttach>) {
                    j["anchors"] = json::object();
                    for (const auto& [g, a] : p.anchors) {
                        json e = json::object();
                        if (a.entry) e["entry"] = point_json(*a.entry);
                        if (a.exit) e["exit"] = point_json(*a.exit);
                        j["anchors"][g] = e;
                    }
                } else if constexpr (std::is_same_v<T, MarkToBase>) {
                    j["bases"] = ids_json(p.bases);
                } else if constexpr (std::is_same_v<T, MarkToLigature>) {
                    j["ligatures"] = ids_json(p.ligatures);
                } else {
                    j["base_marks"] = ids_json(p.base_marks);
                }
            },
            rule.payload);
    return j;
}

// Every glyph id a rule mentions, for reference checking.
std::vector<GlyphId> rule_refs(const LookupRule& rule) {
    std::vector<GlyphId> refs(rule.coverage.glyphs().begin(), rule.coverage.glyphs().end());
    std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, SingleSub>) {
                    for (const auto& [a, b] : p.map) refs.insert(refs.end(), {a, b});
                } else if constexpr (std::is_same_v<T, MultipleSub> || std::is_same_v<T, AlternateSub>) {
                    const auto& m = [&]() -> const auto& {
                        if constexpr (std::is_same_v<T, MultipleSub>) return p.map; else return p.alternates;
                    }();
                    for (const auto& [a, bs] : m) {
                        refs.push_back(a);
                        refs.insert(refs.end(), bs.begin(), bs.end());
                    }
                } else if constexpr (std::is_same_v<T, LigatureSub>) {
                    for (const auto& l : p.ligatures) {
                        refs.insert(refs.end(), l.components.begin(), l.components.end());
                        refs.push_back(l.glyph);
                    }
                } else if constexpr (std::is_same_v<T, ContextualSub>) {
                    refs.insert(refs.end(), p.before.begin(), p.before.end());
                    refs.insert(refs.end(), p.after.begin(), p.after.end());
                    for (const auto& [a, b] : p.map) refs.insert(refs.end(), {a, b});
                } else if constexpr (std::is_same_v<T, SingleAdj>) {
                    for (const auto& [g, v] : p.values) refs.push_back(g);
                } else if constexpr (std::is_same_v<T, PairAdj>) {
                    for (const auto& [pair, v] : p.advance) refs.insert(refs.end(), {pair.first, pair.second});
                } else if constexpr (std::is_same_v<T, CursiveAttach>) {
                    for (const auto& [g, v] : p.anchors) refs.push_back(g);
                } else if constexpr (std::is_same_v<T, MarkToBase>) {
                    refs.insert(refs.end(), p.bases.begin(), p.bases.end());
                } else if constexpr (std::is_same_v<T, MarkToLigature>) {
                    refs.insert(refs.end(), p.ligatures.begin(), p.ligatures.end());
                } else {
                    refs.insert(refs.end(), p.base_marks.begin(), p.base_marks.end());
                }
            },
            rule.payload);
    return refs;
}

void check_refs(const FontDescription& font) {
    auto exists = [&](const GlyphId& id) { return font.glyph(id) || font.mark(id); };
    auto need = [&](const GlyphId& id, bool want_mark, const char* where) {
        const bool ok = want_mark ? font.mark(id) != nullptr : font.glyph(id) != nullptr;
        if (!ok) throw Error(ErrorCode::Ref, id + " (" + where + ")");
    };
    for (const auto& [id, g] : font.glyphs) {
        if (font.marks.count(id)) schema_error("glyph id '" + id + "' is defined as both base and mark");
        if (g.max_extension < 0) throw Error(ErrorCode::Range, id + ": negative max_extension");
    }
    for (const auto& [cp, forms] : font.cmap) {
        for (const auto& [form, id] : forms) need(id, false, "cmap");
    }
    for (const auto& [cp, id] : font.mark_cmap) need(id, true, "mark_cmap");
    for (const auto& [id, m] : font.marks) {
        for (const auto& [v, target] : m.variants) need(target, true, "mark variants");
        if (!m.variants.empty()) {
            auto it = m.variants.find(SizeVariant::Normal);
            if (it == m.variants.end() || it->second != id) {
                schema_error(id + ": the normal variant must be the mark itself");
            }
        }
    }
    for (const auto& l : font.ligatures) {
        for (const auto& c : l.components) need(c, false, "ligature component");
        need(l.glyph, false, "ligature glyph");
        if (l.component_anchors.size() != l.components.size()) {
            schema_error(l.glyph + ": component_anchors length differs from components length");
        }
    }
    for (const auto& [id, table] : font.final_variants) need(id, true, "final_variants");
    for (const auto* rules : {&font.gsub, &font.gpos}) {
        for (const auto& rule : *rules) {
            for (const auto& id : rule_refs(rule)) {
                if (!exists(id)) throw Error(ErrorCode::Ref, id + " (lookup " + std::string(to_string(rule.kind())) + ")");
            }
        }
    }
}

FontDescription parse_font(const json& doc) {
    if (!doc.is_object()) schema_error("font description must be a JSON object");
    if (to_str(req(doc, "schema", "font"), "schema") != kSchema) schema_error("unsupported schema version");
    FontDescription font;
    font.id = to_str(req(doc, "id", "font"), "id");
    font.units_per_em = to_units(req(doc, "units_per_em", "font"), "units_per_em");
    if (font.units_per_em <= 0) throw Error(ErrorCode::Range, "units_per_em must be positive");

    const json& th = req(doc, "size_thresholds", "font");
    font.size_thresholds = {to_units(req(th, "medium", "size_thresholds"), "size_thresholds"),
                            to_units(req(th, "large", "size_thresholds"), "size_thresholds")};
    if (!(0 < font.size_thresholds.medium && font.size_thresholds.medium < font.size_thresholds.large)) {
        throw Error(ErrorCode::Range, "size thresholds must satisfy 0 < medium < large");
    }

    const json& glue = req(doc, "glue", "font");
    font.glue = {to_units(req(glue, "width", "glue"), "glue"), to_units(req(glue, "stretch", "glue"), "glue"),
                 to_units(req(glue, "shrink", "glue"), "glue")};
    if (font.glue.width < 0 || font.glue.stretch < 0 || font.glue.shrink < 0 || font.glue.shrink > font.glue.width) {
        throw Error(ErrorCode::Range, "glue must satisfy 0 <= shrink <= width and stretch >= 0");
    }

    for (const auto& [k, v] : req(doc, "kashida_priority", "font").items()) {
        int cls = 0;
        try {
            cls = std::stoi(k);
        } catch (const std::exception&) {
            schema_error("kashida_priority keys must be integers");
        }
        font.kashida_priority[cls] = to_units(v, "kashida_priority");
    }

    for (const auto& [k, forms] : req(doc, "cmap", "font").items()) {
        const CodePoint cp = parse_cp(k);
        if (!forms.is_object()) schema_error("cmap entries must be objects");
        for (const auto& [fk, id] : forms.items()) {
            auto form = form_from(fk);
            if (!form) schema_error("cmap: unknown form '" + fk + "'");
            font.cmap[cp][*form] = to_str(id, "cmap");
        }
    }
    for (const auto& [k, id] : req(doc, "mark_cmap", "font").items()) font.mark_cmap[parse_cp(k)] = to_str(id, "mark_cmap");

    for (const auto& [id, g] : req(doc, "glyphs", "font").items()) {
        const std::string where = "glyph " + id;
        GlyphMetrics m;
        m.advance = to_units(req(g, "advance", where), where);
        m.ink = parse_rect(req(g, "ink", where), where);
        m.anchors = parse_anchors(req(g, "anchors", where), where);
        m.max_extension = to_units(req(g, "max_extension", where), where);
        m.mass = parse_token(req(g, "mass", where), &mass_class_from, where);
        if (g.contains("path")) m.path = to_str(g["path"], where);
        font.glyphs.emplace(id, std::move(m));
    }

    for (const auto& [id, g] : req(doc, "marks", "font").items()) {
        const std::string where = "mark " + id;
        MarkGlyph m;
        m.attachment = parse_token(req(g, "class", where), &mark_placement_from, where);
        m.anchor = parse_point(req(g, "anchor", where), where);
        m.ink = parse_rect(req(g, "ink", where), where);
        if (g.contains("variants")) {
            for (const auto& [vk, target] : g["variants"].items()) {
                auto v = size_variant_from(vk);
                if (!v) schema_error(where + ": unknown size variant '" + vk + "'");
                m.variants[*v] = to_str(target, where);
            }
        }
        if (g.contains("mark_anchor_above")) m.mark_anchor_above = parse_point(g["mark_anchor_above"], where);
        if (g.contains("path")) m.path = to_str(g["path"], where);
        font.marks.emplace(id, std::move(m));
    }

    for (const auto& l : req(doc, "ligatures", "font")) {
        LigatureEntry e;
        e.components = parse_ids(req(l, "components", "ligature"), "ligature");
        e.glyph = to_str(req(l, "glyph", "ligature"), "ligature");
        for (const auto& a : req(l, "component_anchors", "ligature")) e.component_anchors.push_back(parse_anchors(a, "ligature"));
        const auto kind = to_str(req(l, "kind", "ligature"), "ligature");
        if (kind == "linguistic") e.kind = LigatureKind::Linguistic;
        else if (kind == "aesthetic") e.kind = LigatureKind::Aesthetic;
        else schema_error("ligature kind must be linguistic or aesthetic");
        font.ligatures.push_back(std::move(e));
    }

    for (const auto& [mk, table] : req(doc, "mark_offsets", "font").items()) {
        auto mass = mass_class_from(mk);
        if (!mass) schema_error("mark_offsets: unknown mass class '" + mk + "'");
        for (const auto& [sk, v] : table.items()) {
            auto side = mark_placement_from(sk);
            if (!side) schema_error("mark_offsets: unknown side '" + sk + "'");
            const Units dy = to_units(v, "mark_offsets");
            if ((*side == MarkPlacement::Above && dy < 0) || (*side == MarkPlacement::Below && dy > 0)) {
                throw Error(ErrorCode::Range, "mark_offsets must move marks away from the base");
            }
            font.mark_offsets[*mass][*side] = dy;
        }
    }

    for (const auto& [id, table] : req(doc, "final_variants", "font").items()) {
        for (const auto& [mk, v] : table.items()) {
            auto mass = mass_class_from(mk);
            if (!mass) schema_error("final_variants: unknown mass class '" + mk + "'");
            font.final_variants[id][*mass] = parse_enum(v, kVariantNames, "final_variants");
        }
    }

    int n = 0;
    for (const auto& r : req(doc, "gsub", "font")) font.gsub.push_back(parse_rule(r, "gsub[" + std::to_string(n++) + "]"));
    n = 0;
    for (const auto& r : req(doc, "gpos", "font")) font.gpos.push_back(parse_rule(r, "gpos[" + std::to_string(n++) + "]"));
    for (const auto& r : font.gsub) {
        if (!is_substitution(r.kind())) schema_error("gsub holds a positioning lookup");
    }
    for (const auto& r : font.gpos) {
        if (is_substitution(r.kind())) schema_error("gpos holds a substitution lookup");
    }

    check_refs(font);
    return font;
}

std::string str(std::string_view s) { return std::string(s); }

}  // namespace

std::string_view to_string(SizeVariant v) {
    for (const auto& [value, name] : kVariantNames) {
        if (value == v) return name;
    }
    return "?";
}

std::optional<SizeVariant> size_variant_from(std::string_view s) {
    for (const auto& [value, name] : kVariantNames) {
        if (name == s) return value;
    }
    return std::nullopt;
}

std::string_view to_string(LigatureKind k) { return k == LigatureKind::Linguistic ? "linguistic" : "aesthetic"; }

const GlyphMetrics* FontDescription::glyph(std::string_view glyph_id) const {
    auto it = glyphs.find(glyph_id);
    return it == glyphs.end() ? nullptr : &it->second;
}

const MarkGlyph* FontDescription::mark(std::string_view mark_id) const {
    auto it = marks.find(mark_id);
    return it == marks.end() ? nullptr : &it->second;
}

const LigatureEntry* FontDescription::ligature(std::string_view glyph_id) const {
    for (const auto& l : ligatures) {
        if (l.glyph == glyph_id) return &l;
    }
    return nullptr;
}

int FontDescription::kashida_rank(int stretch_class) const {
    auto it = kashida_priority.find(stretch_class);
    return it == kashida_priority.end() ? stretch_class : it->second;
}

Units FontDescription::mark_offset(MassClass mass, MarkPlacement side) const {
    auto it = mark_offsets.find(mass);
    if (it == mark_offsets.end()) return 0;
    auto jt = it->second.find(side);
    return jt == it->second.end() ? 0 : jt->second;
}

FontDescription load_font(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
    try {
        return parse_font(doc);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Schema, e.what());
    }
}

FontDescription load_font_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_font(ss.str());
}

std::string serialize(const FontDescription& font) {
    json doc;
    doc["schema"] = kSchema;
    doc["id"] = font.id;
    doc["units_per_em"] = font.units_per_em;
    doc["size_thresholds"] = {{"medium", font.size_thresholds.medium}, {"large", font.size_thresholds.large}};
    doc["glue"] = {{"width", font.glue.width}, {"stretch", font.glue.stretch}, {"shrink", font.glue.shrink}};
    doc["kashida_priority"] = json::object();
    for (const auto& [cls, rank] : font.kashida_priority) doc["kashida_priority"][std::to_string(cls)] = rank;
    doc["cmap"] = json::object();
    for (const auto& [cp, forms] : font.cmap) {
        json f = json::object();
        for (const auto& [form, id] : forms) f[str(to_string(form))] = id;
        doc["cmap"][format_cp(cp)] = f;
    }
    doc["mark_cmap"] = json::object();
    for (const auto& [cp, id] : font.mark_cmap) doc["mark_cmap"][format_cp(cp)] = id;
    doc["glyphs"] = json::object();
    for (const auto& [id, g] : font.glyphs) {
        json j{{"advance", g.advance},
               {"ink", rect_json(g.ink)},
               {"anchors", anchors_json(g.anchors)},
               {"max_extension", g.max_extension},
               {"mass", to_string(g.mass)}};
        if (g.path) j["path"] = *g.path;
        doc["glyphs"][id] = std::move(j);
    }
    doc["marks"] = json::object();
    for (const auto& [id, m] : font.marks) {
        json j{{"class", to_string(m.attachment)}, {"anchor", point_json(m.anchor)}, {"ink", rect_json(m.ink)}};
        if (!m.variants.empty()) {
            j["variants"] = json::object();
            for (const auto& [v, target] : m.variants) j["variants"][str(to_string(v))] = target;
        }
        if (m.mark_anchor_above) j["mark_anchor_above"] = point_json(*m.mark_anchor_above);
        if (m.path) j["path"] = *m.path;
        doc["marks"][id] = std::move(j);
    }
    doc["ligatures"] = json::array();
    for (const auto& l : font.ligatures) {
        json anchors = json::array();
        for (const auto& a : l.component_anchors) anchors.push_back(anchors_json(a));
        doc["ligatures"].push_back({{"components", l.components},
                                    {"glyph", l.glyph},
                                    {"component_anchors", anchors},
                                    {"kind", to_string(l.kind)}});
    }
    doc["mark_offsets"] = json::object();
    for (const auto& [mass, table] : font.mark_offsets) {
        json t = json::object();
        for (const auto& [side, dy] : table) t[str(to_string(side))] = dy;
        doc["mark_offsets"][str(to_string(mass))] = t;
    }
    doc["final_variants"] = json::object();
    for (const auto& [id, table] : font.final_variants) {
        json t = json::object();
        for (const auto& [mass, v] : table) t[str(to_string(mass))] = to_string(v);
        doc["final_variants"][id] = t;
    }
    doc["gsub"] = json::array();
    for (const auto& r : font.gsub) doc["gsub"].push_back(rule_json(r));
    doc["gpos"] = json::array();
    for (const auto& r : font.gpos) doc["gpos"].push_back(rule_json(r));
    return doc.dump(2) + "\n";
}

GlyphId glyph_for(const FontDescription& font, CodePoint letter, Form form) {
    auto it = font.cmap.find(letter);
    if (it != font.cmap.end()) {
        auto jt = it->second.find(form);
        if (jt != it->second.end()) return jt->second;
    }
    throw Error(ErrorCode::NoGlyph, format_cp(letter) + " " + std::string(to_string(form)));
}

std::map<GlyphId, MassClass> suggested_mass_classes(const FontDescription& font) {
    std::vector<std::int64_t> areas;
    areas.reserve(font.glyphs.size());
    for (const auto& [id, g] : font.glyphs) areas.push_back(g.ink.area());
    std::map<GlyphId, MassClass> out;
    if (areas.empty()) return out;
    std::sort(areas.begin(), areas.end());
    const auto t1 = areas[areas.size() / 3];
    const auto t2 = areas[2 * areas.size() / 3];
    for (const auto& [id, g] : font.glyphs) {
        const auto a = g.ink.area();
        out[id] = a < t1 ? MassClass::Light : (a < t2 ? MassClass::Medium : MassClass::Heavy);
    }
    return out;
}

std::vector<Diagnostic> lint_font(const FontDescription& font, const TextModel& model) {
    std::vector<Diagnostic> out;
    auto report = [&](Severity s, const char* code, std::string message) {
        out.push_back(Diagnostic{s, code, std::move(message), std::nullopt, std::nullopt});
    };

    // Letter x form pairs missing from cmap.
    for (const auto& [cp, letter] : model.letters()) {
        for (Form form : valid_forms(letter.joining)) {
            auto it = font.cmap.find(cp);
            if (it == font.cmap.end() || !it->second.count(form)) {
                report(Severity::Error, "MissingCmapEntry", format_cp(cp) + " " + str(to_string(form)));
            }
        }
    }

    // Attachment classes some mark actually uses.
    std::set<MarkPlacement> used_classes;
    for (const auto& [id, m] : font.marks) used_classes.insert(m.attachment);
    for (const auto& [id, g] : font.glyphs) {
        if (font.ligature(id)) continue;
        for (MarkPlacement cls : used_classes) {
            if (!g.anchors.count(cls)) {
                report(Severity::Error, "MissingAnchor", id + " lacks a '" + str(to_string(cls)) + "' anchor");
            }
        }
    }
    for (const auto& l : font.ligatures) {
        for (std::size_t c = 0; c < l.component_anchors.size(); ++c) {
            for (MarkPlacement cls : used_classes) {
                if (!l.component_anchors[c].count(cls)) {
                    report(Severity::Error, "MissingAnchor",
                           l.glyph + " component " + std::to_string(c) + " lacks a '" + str(to_string(cls)) + "' anchor");
                }
            }
        }
    }

    // Elongatable marks need all three size variants and a final-phase table.
    for (const auto& [cp, mark_id] : font.mark_cmap) {
        const DiacriticRecord* d = model.diacritic(cp);
        if (!d || !d->elongatable) continue;
        const MarkGlyph* m = font.mark(mark_id);
        for (SizeVariant v : {SizeVariant::Medium, SizeVariant::Large}) {
            if (!m->variants.count(v)) {
                report(Severity::Error, "MissingVariant", mark_id + " lacks a '" + str(to_string(v)) + "' variant");
            }
        }
        auto it = font.final_variants.find(mark_id);
        for (MassClass mass : {MassClass::Light, MassClass::Medium, MassClass::Heavy}) {
            if (it == font.final_variants.end() || !it->second.count(mass)) {
                report(Severity::Error, "MissingMassVariant",
                       mark_id + " has no final-phase variant for mass '" + str(to_string(mass)) + "'");
            }
        }
    }

    // Stretch capacity must agree with the letter inventory.
    std::map<GlyphId, bool> stretchable;  // glyph -> reached from a stretchable joining form
    std::set<GlyphId> from_rigid;
    for (const auto& [cp, forms] : font.cmap) {
        const LetterRecord* letter = model.letter(cp);
        if (!letter) continue;
        for (const auto& [form, id] : forms) {
            const bool joins_forward = form == Form::Initial || form == Form::Medial;
            if (letter->stretch_class > 0 && joins_forward) stretchable[id] = true;
            if (letter->stretch_class == 0) from_rigid.insert(id);
        }
    }
    for (const auto& [id, yes] : stretchable) {
        if (font.glyph(id)->max_extension == 0) {
            report(Severity::Error, "ZeroStretch", id + " is stretchable but has max_extension 0");
        }
    }
    for (const auto& id : from_rigid) {
        if (font.glyph(id)->max_extension > 0) {
            report(Severity::Error, "UnexpectedStretch", id + " belongs to a non-stretchable letter but has max_extension > 0");
        }
    }

    for (const auto& l : font.ligatures) {
        if (l.components.size() != 2) {
            report(Severity::Error, "MultilevelLigature",
                   l.glyph + " has " + std::to_string(l.components.size()) + " components; only single-level (2) is supported");
        }
    }

    const auto suggested = suggested_mass_classes(font);
    for (const auto& [id, g] : font.glyphs) {
        const MassClass s = suggested.at(id);
        if (s != g.mass) {
            report(Severity::Warn, "MassMismatch",
                   id + " is authored '" + str(to_string(g.mass)) + "' but its ink area suggests '" + str(to_string(s)) + "'");
        }
    }
    return out;
}

}  // namespace qalam
