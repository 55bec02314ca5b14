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

#include "joining_oracle.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qalam::oracle {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

JoiningReference JoiningReference::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    JoiningReference ref;
    for (std::string line; std::getline(in, line);) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ';');) fields.push_back(trim(f));
        if (fields.size() < 3 || fields[2].size() != 1) throw std::runtime_error("bad line: " + line);
        ref.mTypes[static_cast<CodePoint>(std::stoul(fields[0], nullptr, 16))] = fields[2][0];
    }
    return ref;
}

char JoiningReference::type(CodePoint cp) const {
    auto it = mTypes.find(cp);
    return it == mTypes.end() ? 'U' : it->second;
}

// R2: right-joining after a left-joining neighbour takes its final form.
// R3..R5: dual-joining letters take initial, medial or final form by
// which neighbours join towards them. R6: everything else is isolated.
std::vector<Form> JoiningReference::forms(const std::vector<CodePoint>& word) const {
    auto joins_left = [&](char t) { return t == 'D' || t == 'C'; };
    auto joins_right = [&](char t) { return t == 'R' || t == 'D' || t == 'C'; };
    std::vector<Form> out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        const char t = type(word[i]);
        const bool before = i > 0 && joins_left(type(word[i - 1]));
        const bool after = i + 1 < word.size() && joins_right(type(word[i + 1]));
        Form f = Form::Isolated;
        if (t == 'R' && before) f = Form::Final;
        if (t == 'D' || t == 'C') {
            if (before && after) f = Form::Medial;
            else if (after) f = Form::Initial;
            else if (before) f = Form::Final;
        }
        out.push_back(f);
    }
    return out;
}

}  // namespace qalam::oracle
