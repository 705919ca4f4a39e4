"""Validates every JSON report written by the CLI tests against the schema."""
import json
import pathlib
import sys

import jsonschema

schema = json.loads(pathlib.Path(sys.argv[1]).read_text())
reports = sorted(pathlib.Path(sys.argv[2]).rglob("*.json"))
if not reports:
    sys.exit("no reports found")
for path in reports:
    jsonschema.validate(json.loads(path.read_text()), schema)
print(f"{len(reports)} reports valid")
