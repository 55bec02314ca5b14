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

#ifndef QALAM_GEOMETRY_H
#define QALAM_GEOMETRY_H

#include <algorithm>
#include <cstdint>

namespace qalam {

// All geometry is in integer font units.
using Units = std::int32_t;

struct Point {
    Units x = 0;
    Units y = 0;

    bool operator==(const Point&) const = default;
    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
};

// Anchor coordinates relative to a glyph origin.
using AnchorPoint = Point;

struct Rect {
    Units x_min = 0;
    Units y_min = 0;
    Units x_max = 0;
    Units y_max = 0;

    bool operator==(const Rect&) const = default;
    Units width() const { return x_max - x_min; }
    Units height() const { return y_max - y_min; }
    std::int64_t area() const { return std::int64_t{width()} * height(); }
    bool valid() const { return x_min <= x_max && y_min <= y_max; }
    Rect translated(Point p) const { return {x_min + p.x, y_min + p.y, x_max + p.x, y_max + p.y}; }
};

// Closed-open horizontal interval [begin, end).
struct Span {
    Units begin = 0;
    Units end = 0;

    bool operator==(const Span&) const = default;
    Units length() const { return std::max<Units>(0, end - begin); }
};

}  // namespace qalam

#endif  // QALAM_GEOMETRY_H
