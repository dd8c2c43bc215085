"""Validates gabrank --json output against the schemas in schemas/."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(s)) for name, s in schemas.items())
    for s in schemas.values():
        jsonschema.Draft202012Validator.check_schema(s)

    def validate(instance, name):
        jsonschema.Draft202012Validator(schemas[name], registry=registry).validate(instance)

    def run(*args, ok=(0,)):
        proc = subprocess.run([exe, *args, "--json", "--no-timing"], capture_output=True, text=True)
        if proc.returncode not in ok:
            raise SystemExit(f"{args}: exit {proc.returncode}\n{proc.stderr}")
        return json.loads(proc.stdout)

    trk = run("trk", "--q", "2", "--n", "4", "--k", "2")
    validate(trk, "search_result.schema.json")
    validate(trk["code"], "code.schema.json")
    validate(trk["field"], "field_spec.schema.json")
    validate(run("trk", "--q", "3", "--n", "4", "--k", "1", "--t-max", "0"), "search_result.schema.json")
    validate(run("search-random", "--q", "3", "--n", "3", "--k", "1", "--r", "6", "--trials", "500"),
             "search_result.schema.json")
    validate(run("field-info", "--q", "9", "--n", "2")["field"], "field_spec.schema.json")
    validate(run("verify-theorems", "--q", "2", "--quartic-params", "5", "--instances", "5"),
             "theorem_report.schema.json")
    table = run("verify-table", ok=(0, 1))
    assert len(table["rows"]) == 8
    for row in table["rows"]:
        validate(row, "table1_row.schema.json")
    print("schemas ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
