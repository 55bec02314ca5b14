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
"""Validate qalam JSON files against the schemas in docs/.

usage: validate_schemas.py DOCS_DIR KIND FILE [FILE...]
KIND is one of font, layout, diagnostics, text-table.
"""
import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource


def main(argv):
    if len(argv) < 4:
        print(__doc__, file=sys.stderr)
        return 2
    docs = pathlib.Path(argv[1])
    schemas = {p.name: json.loads(p.read_text()) for p in docs.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(schema)) for name, schema in schemas.items())
    schema = schemas[argv[2] + ".schema.json"]
    validator = jsonschema.Draft202012Validator(schema, registry=registry)
    failed = 0
    for path in argv[3:]:
        doc = json.loads(pathlib.Path(path).read_text())
        for error in validator.iter_errors(doc):
            failed += 1
            print(f"{path}: {'/'.join(map(str, error.absolute_path))}: {error.message}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
