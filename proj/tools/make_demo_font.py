#!/usr/bin/env python3
# Copyright 2026 The Qalam Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates data/fonts/chawki-demo.json.

The font carries ink boxes only. Mass classes are derived from ink-area
terciles so the font passes its own lint.
"""

import argparse
import json
import pathlib

UPM = 1000

# name, code point, joining (D/R/U), stretch class, family, dots (count, side)
LETTERS = [
    ("hamza", 0x0621, "U", 0, "hamza", (0, None)),
    ("alef_madda", 0x0622, "R", 0, "alef_madda", (0, None)),
    ("alef_hamza_above", 0x0623, "R", 0, "alef_hamza_above", (0, None)),
    ("waw_hamza", 0x0624, "R", 0, "waw_hamza", (0, None)),
    ("alef_hamza_below", 0x0625, "R", 0, "alef_hamza_below", (0, None)),
    ("yeh_hamza", 0x0626, "D", 2, "yeh_hamza", (0, None)),
    ("alef", 0x0627, "R", 0, "alef", (0, None)),
    ("beh", 0x0628, "D", 2, "beh", (1, "below")),
    ("teh_marbuta", 0x0629, "R", 0, "teh_marbuta", (2, "above")),
    ("teh", 0x062A, "D", 2, "beh", (2, "above")),
    ("theh", 0x062B, "D", 2, "beh", (3, "above")),
    ("jeem", 0x062C, "D", 1, "hah", (1, "below")),
    ("hah", 0x062D, "D", 1, "hah", (0, None)),
    ("khah", 0x062E, "D", 1, "hah", (1, "above")),
    ("dal", 0x062F, "R", 0, "dal", (0, None)),
    ("thal", 0x0630, "R", 0, "dal", (1, "above")),
    ("reh", 0x0631, "R", 0, "reh", (0, None)),
    ("zain", 0x0632, "R", 0, "reh", (1, "above")),
    ("seen", 0x0633, "D", 3, "seen", (0, None)),
    ("sheen", 0x0634, "D", 3, "seen", (3, "above")),
    ("sad", 0x0635, "D", 3, "sad", (0, None)),
    ("dad", 0x0636, "D", 3, "sad", (1, "above")),
    ("tah", 0x0637, "D", 1, "tah", (0, None)),
    ("zah", 0x0638, "D", 1, "tah", (1, "above")),
    ("ain", 0x0639, "D", 1, "ain", (0, None)),
    ("ghain", 0x063A, "D", 1, "ain", (1, "above")),
    ("feh", 0x0641, "D", 2, "feh", (1, "above")),
    ("qaf", 0x0642, "D", 2, "qaf", (2, "above")),
    ("kaf", 0x0643, "D", 2, "kaf", (0, None)),
    ("lam", 0x0644, "D", 2, "lam", (0, None)),
    ("meem", 0x0645, "D", 1, "meem", (0, None)),
    ("noon", 0x0646, "D", 2, "noon", (1, "above")),
    ("heh", 0x0647, "D", 1, "heh", (0, None)),
    ("waw", 0x0648, "R", 0, "waw", (0, None)),
    ("alef_maksura", 0x0649, "D", 2, "yeh", (0, None)),
    ("yeh", 0x064A, "D", 2, "yeh", (2, "below")),
]

# family: advances (isol, init, medi, fina), ink top, tail depth of the
# isolated/final forms, depth of the joining forms.
FAMILIES = {
    "hamza": ((240, 0, 0, 0), 300, 0, 0),
    "alef": ((120, 0, 0, 140), 700, 0, 0),
    "alef_madda": ((140, 0, 0, 160), 840, 0, 0),
    "alef_hamza_above": ((130, 0, 0, 150), 840, 0, 0),
    "alef_hamza_below": ((130, 0, 0, 150), 700, -200, 0),
    "waw_hamza": ((300, 0, 0, 320), 460, -260, 0),
    "yeh_hamza": ((460, 180, 160, 480), 460, -300, 0),
    "beh": ((480, 180, 160, 500), 220, 0, 0),
    "teh_marbuta": ((280, 0, 0, 260), 420, 0, 0),
    "hah": ((420, 380, 360, 420), 380, -320, 0),
    "dal": ((260, 0, 0, 280), 360, 0, 0),
    "reh": ((260, 0, 0, 280), 200, -280, 0),
    "seen": ((620, 420, 400, 640), 260, -250, 0),
    "sad": ((700, 480, 460, 720), 330, -250, 0),
    "tah": ((480, 440, 420, 500), 720, 0, 0),
    "ain": ((380, 260, 240, 360), 380, -320, 0),
    "feh": ((540, 200, 180, 560), 420, 0, 0),
    "qaf": ((480, 200, 180, 480), 420, -300, 0),
    "kaf": ((520, 340, 320, 540), 720, 0, 0),
    "lam": ((380, 140, 140, 380), 760, -260, 0),
    "meem": ((300, 240, 220, 320), 260, -320, 0),
    "noon": ((400, 180, 160, 420), 300, -250, 0),
    "heh": ((280, 260, 240, 260), 360, 0, 0),
    "waw": ((300, 0, 0, 320), 300, -260, 0),
    "yeh": ((460, 180, 160, 480), 260, -300, 0),
}

FORMS = ["isolated", "initial", "medial", "final"]
SUFFIX = {"isolated": "isol", "initial": "init", "medial": "medi", "final": "fina"}
CAPACITY = {0: 0, 1: 200, 2: 300, 3: 500}

ABOVE_CLEARANCE = 60
BELOW_CLEARANCE = 60


def forms_for(joining):
    return {"D": FORMS, "R": ["isolated", "final"], "U": ["isolated"]}[joining]


def ink_box(form, advance, top, tail, dots):
    x0 = 0 if form in ("initial", "medial") else 10
    x1 = advance if form in ("medial", "final") else advance - 10
    y0 = tail if form in ("isolated", "final") else 0
    count, side = dots
    if count and side == "above":
        top = max(top, 340)
    if count and side == "below":
        y0 = min(y0, -150)
    return [x0, y0, x1, top]


def anchors_for(ink):
    cx = (ink[0] + ink[2]) // 2
    return {"above": [cx, ink[3] + ABOVE_CLEARANCE], "below": [cx, ink[1] - BELOW_CLEARANCE]}


def base_glyph(advance, ink, capacity):
    return {"advance": advance, "ink": ink, "anchors": anchors_for(ink), "max_extension": capacity}


def make_letters(glyphs, cmap):
    for name, cp, joining, stretch, family, dots in LETTERS:
        advances, top, tail, _ = FAMILIES[family]
        entry = {}
        for form in forms_for(joining):
            advance = advances[FORMS.index(form)]
            gid = f"{name}.{SUFFIX[form]}"
            capacity = CAPACITY[stretch] if form in ("initial", "medial") else 0
            glyphs[gid] = base_glyph(advance, ink_box(form, advance, top, tail, dots), capacity)
            entry[form] = gid
        cmap[f"U+{cp:04X}"] = entry


ALEFS = ["alef", "alef_madda", "alef_hamza_above", "alef_hamza_below"]


def ligature_name(alef):
    return "lam_alef" if alef == "alef" else f"lam_{alef}"


def make_ligatures(glyphs):
    ligatures = []
    rlig = []
    for alef in ALEFS:
        _, top, tail, _ = FAMILIES[alef]
        for lam_form, lig_form, advance, x0 in (("init", "isol", 420, 10), ("medi", "fina", 440, 0)):
            gid = f"{ligature_name(alef)}.{lig_form}"
            ink = [x0, min(tail, 0), advance - 10, max(top, 780)]
            glyphs[gid] = base_glyph(advance, ink, 0)
            above_y = ink[3] + ABOVE_CLEARANCE
            below_y = ink[1] - BELOW_CLEARANCE
            # Lam sits on the right of the pair.
            comp_anchors = [
                {"above": [advance - 120, above_y], "below": [advance - 120, below_y]},
                {"above": [110, above_y], "below": [110, below_y]},
            ]
            components = [f"lam.{lam_form}", f"{alef}.fina"]
            ligatures.append({"components": components, "glyph": gid, "component_anchors": comp_anchors,
                              "kind": "linguistic"})
            rlig.append({"components": components, "glyph": gid})

    liga = []
    for lam_form, meem_form, lig_form, advance, capacity in (
        ("init", "medi", "init", 300, CAPACITY[1]),
        ("init", "fina", "isol", 380, 0),
        ("medi", "medi", "medi", 300, CAPACITY[1]),
        ("medi", "fina", "fina", 390, 0),
    ):
        gid = f"lam_meem.{lig_form}"
        tail = -320 if meem_form == "fina" else 0
        x0 = 0 if lig_form in ("init", "medi") else 10
        x1 = advance if lig_form in ("medi", "fina") else advance - 10
        ink = [x0, tail, x1, 760]
        glyphs[gid] = base_glyph(advance, ink, capacity)
        above_y = ink[3] + ABOVE_CLEARANCE
        below_y = ink[1] - BELOW_CLEARANCE
        comp_anchors = [
            {"above": [advance - 70, above_y], "below": [advance - 70, below_y]},
            {"above": [(advance - 140) // 2, above_y], "below": [(advance - 140) // 2, below_y]},
        ]
        components = [f"lam.{lam_form}", f"meem.{meem_form}"]
        ligatures.append({"components": components, "glyph": gid, "component_anchors": comp_anchors,
                          "kind": "aesthetic"})
        liga.append({"components": components, "glyph": gid})
    return ligatures, rlig, liga


ALTERNATES = {
    "kaf.isol": ("kaf.isol.alt", 420),
    "beh.fina": ("beh.fina.alt", 380),
    "noon.fina": ("noon.fina.alt", 330),
    "yeh.fina": ("yeh.fina.alt", 360),
}


def make_alternates(glyphs):
    for source, (gid, advance) in ALTERNATES.items():
        src = glyphs[source]
        ink = list(src["ink"])
        ink[2] = advance - (src["advance"] - ink[2])
        glyphs[gid] = base_glyph(advance, ink, 0)
    expanded = dict(glyphs["beh.isol"])
    ink = [10, expanded["ink"][1], 690, expanded["ink"][3]]
    glyphs["beh.isol.expanded"] = base_glyph(700, ink, 0)


def mark(cls, width, height, **extra):
    if cls == "above":
        ink, anchor = [0, 0, width, height], [width // 2, 0]
    else:
        ink, anchor = [0, -height, width, 0], [width // 2, 0]
    m = {"class": cls, "anchor": anchor, "ink": ink}
    m.update(extra)
    return m


def make_marks():
    marks = {}
    for name, height, growth in (("fatha", 40, 10), ("fathatan", 110, 10)):
        marks[name] = mark("above", 120, height,
                           variants={"normal": name, "medium": f"{name}.medium", "large": f"{name}.large"})
        marks[f"{name}.medium"] = mark("above", 240, height + growth)
        marks[f"{name}.large"] = mark("above", 400, height + 2 * growth)
    marks["damma"] = mark("above", 90, 120)
    marks["dammatan"] = mark("above", 160, 120)
    marks["sukun"] = mark("above", 80, 80)
    marks["shadda"] = mark("above", 140, 90, mark_anchor_above=[70, 110])
    marks["kasra"] = mark("below", 120, 40)
    marks["kasratan"] = mark("below", 120, 110)
    mark_cmap = {
        "U+064B": "fathatan", "U+064C": "dammatan", "U+064D": "kasratan", "U+064E": "fatha",
        "U+064F": "damma", "U+0650": "kasra", "U+0651": "shadda", "U+0652": "sukun",
    }
    return marks, mark_cmap


def assign_mass(glyphs):
    def area(g):
        x0, y0, x1, y1 = g["ink"]
        return (x1 - x0) * (y1 - y0)

    areas = sorted(area(g) for g in glyphs.values())
    t1, t2 = areas[len(areas) // 3], areas[2 * len(areas) // 3]
    for g in glyphs.values():
        a = area(g)
        g["mass"] = "light" if a < t1 else ("medium" if a < t2 else "heavy")


def build():
    glyphs, cmap = {}, {}
    make_letters(glyphs, cmap)
    ligatures, rlig, liga = make_ligatures(glyphs)
    make_alternates(glyphs)
    marks, mark_cmap = make_marks()
    assign_mass(glyphs)

    lig_glyphs = sorted(l["glyph"] for l in ligatures)
    plain_bases = sorted(g for g in glyphs if g not in lig_glyphs)
    all_marks = sorted(marks)
    above_marks = sorted(m for m in marks if marks[m]["class"] == "above" and m != "shadda")

    gsub = [
        {"kind": "ligature_sub", "feature": "rlig", "flags": ["ignore_marks"],
         "coverage": sorted({l["components"][0] for l in rlig}), "ligatures": rlig},
        {"kind": "ligature_sub", "feature": "liga", "flags": ["ignore_marks"],
         "coverage": sorted({l["components"][0] for l in liga}), "ligatures": liga},
        {"kind": "single_sub", "feature": "ss01", "flags": [], "coverage": ["beh.isol"],
         "map": {"beh.isol": "beh.isol.expanded"}},
        {"kind": "alternate_sub", "feature": "jalt", "flags": [], "coverage": sorted(ALTERNATES),
         "alternates": {k: [v[0]] for k, v in ALTERNATES.items()}},
    ]
    gpos = [
        {"kind": "mark_to_base", "feature": "mark", "flags": [], "coverage": all_marks, "bases": plain_bases},
        {"kind": "mark_to_ligature", "feature": "mark", "flags": [], "coverage": all_marks, "ligatures": lig_glyphs},
        {"kind": "mark_to_mark", "feature": "mkmk", "flags": [], "coverage": above_marks, "base_marks": ["shadda"]},
    ]
    return {
        "schema": "qalam-font/1",
        "id": "chawki-demo",
        "units_per_em": UPM,
        "size_thresholds": {"medium": 200, "large": 450},
        "glue": {"width": 250, "stretch": 125, "shrink": 80},
        "kashida_priority": {"1": 1, "2": 2, "3": 3},
        "cmap": cmap,
        "mark_cmap": mark_cmap,
        "glyphs": glyphs,
        "marks": marks,
        "ligatures": ligatures,
        "mark_offsets": {
            "light": {"above": 0, "below": 0},
            "medium": {"above": 20, "below": -20},
            "heavy": {"above": 40, "below": -40},
        },
        "final_variants": {
            name: {"light": "normal", "medium": "medium", "heavy": "large"} for name in ("fatha", "fathatan")
        },
        "gsub": gsub,
        "gpos": gpos,
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    default_out = pathlib.Path(__file__).resolve().parent.parent / "data" / "fonts" / "chawki-demo.json"
    parser.add_argument("-o", "--output", type=pathlib.Path, default=default_out)
    args = parser.parse_args()
    args.output.parent.mkdir(parents=True, exist_ok=True)
    args.output.write_text(json.dumps(build(), indent=2, sort_keys=True) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
