#!/usr/bin/env python3
"""Validate igk JSON output against the schemas in tools/schemas."""
import argparse
import json
import pathlib
import sys

import jsonschema

SCHEMA_DIR = pathlib.Path(__file__).resolve().parent / "schemas"


def validate(document, kind):
    schema = json.loads((SCHEMA_DIR / f"{kind}.schema.json").read_text())
    jsonschema.validate(document, schema, cls=jsonschema.Draft202012Validator)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("kind", choices=["table", "report"])
    parser.add_argument("path", nargs="?", help="JSON file (default: stdin)")
    args = parser.parse_args()
    text = pathlib.Path(args.path).read_text() if args.path else sys.stdin.read()
    try:
        validate(json.loads(text), args.kind)
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        print(f"invalid {args.kind} document: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
