#!/usr/bin/env python3
# Copyright 2026 The Tempref Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Checks test data and CLI output against the published schemas.

usage: validate_schemas.py SCHEMA_DIR DATA_DIR TEMPREF_BINARY
"""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource


def main(argv):
  schema_dir, data_dir, cli = map(pathlib.Path, argv[1:4])
  registry = Registry()
  schemas = {}
  for path in sorted(schema_dir.glob("*.schema.json")):
    schema = json.loads(path.read_text())
    registry = registry.with_resource(path.name, Resource.from_contents(schema))
    schemas[path.name.removesuffix(".schema.json")] = schema

  def check(kind, instance, label, quiet=False):
    cls = jsonschema.validators.validator_for(schemas[kind])
    cls.check_schema(schemas[kind])
    errors = list(cls(schemas[kind], registry=registry).iter_errors(instance))
    for e in [] if quiet else errors[:3]:
      print(f"{label}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
    return not errors

  ok = True
  dialogs = sorted(data_dir.glob("fixtures/*.dialog.json"))
  dialogs += sorted(data_dir.glob("gold_corpus/*.dialog.json"))
  for path in dialogs:
    ok &= check("dialog", json.loads(path.read_text()), path.name)
  for path in sorted(data_dir.glob("*/*.key.json")):
    ok &= check("key", json.loads(path.read_text()), path.name)

  out = subprocess.run([str(cli), "resolve", *map(str, dialogs)],
                       check=True, capture_output=True, text=True).stdout
  ok &= check("resolution", json.loads(out), "resolve output")

  bad = json.loads((data_dir / "invalid/missing_date.dialog.json").read_text())
  if check("dialog", bad, "missing_date", quiet=True):
    print("missing_date.dialog.json should not validate")
    ok = False

  print(f"checked {len(dialogs)} dialogs")
  return 0 if ok else 1


if __name__ == "__main__":
  sys.exit(main(sys.argv))
