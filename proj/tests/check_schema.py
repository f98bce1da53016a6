"""Runs representative nz commands and validates their JSON against the shipped schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema

RESULT_COMMANDS = [
    ["spheres", "--b-ratio", "3", "--charge-e", "1"],
    ["spheres", "--b-ratio", "1", "--charge-e", "2", "--method", "quad"],
    ["loop", "--radius-m", "1", "--current-a", "1"],
    ["loop", "--radius-m", "1", "--current-a", "1", "--method", "quad"],
    ["hydrogen", "--part", "electric"],
    ["hydrogen", "--part", "energy"],
    ["atom", "--element", "Ne"],
]


def run(nz, args):
    proc = subprocess.run([nz, *args], capture_output=True, text=True, check=False)
    if proc.returncode != 0:
        sys.exit(f"{' '.join(args)} exited with {proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout)


def main():
    nz, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    result_schema = json.loads((schema_dir / "result.schema.json").read_text())
    validate_schema = json.loads((schema_dir / "validate.schema.json").read_text())
    for args in RESULT_COMMANDS:
        jsonschema.validate(run(nz, args), result_schema)
        print("ok", " ".join(args))
    jsonschema.validate(run(nz, ["validate", "--fast"]), validate_schema)
    print("ok validate --fast")


if __name__ == "__main__":
    main()
