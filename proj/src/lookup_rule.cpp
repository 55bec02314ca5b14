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

#include "qalam/lookup_rule.h"

namespace qalam {

namespace {

constexpr std::pair<LookupKind, std::string_view> kKindNames[] = {
        {LookupKind::SingleSub, "single_sub"},
        {LookupKind::MultipleSub, "multiple_sub"},
        {LookupKind::AlternateSub, "alternate_sub"},
        {LookupKind::LigatureSub, "ligature_sub"},
        {LookupKind::ContextualSub, "contextual_sub"},
        {LookupKind::SingleAdj, "single_adj"},
        {LookupKind::PairAdj, "pair_adj"},
        {LookupKind::CursiveAttach, "cursive_attach"},
        {LookupKind::MarkToBase, "mark_to_base"},
        {LookupKind::MarkToLigature, "mark_to_ligature"},
        {LookupKind::MarkToMark, "mark_to_mark"},
};

}  // namespace

std::string_view to_string(LookupKind k) {
    for (const auto& [value, name] : kKindNames) {
        if (value == k) return name;
    }
    return "?";
}

std::optional<LookupKind> lookup_kind_from(std::string_view s) {
    for (const auto& [value, name] : kKindNames) {
        if (name == s) return value;
    }
    return std::nullopt;
}

bool is_substitution(LookupKind k) { return k <= LookupKind::ContextualSub; }

}  // namespace qalam
