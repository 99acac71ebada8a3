#!/usr/bin/env python3
"""Runs the documented CLI examples: JSON reports must validate against the
schema, repeat byte for byte, and exit codes must follow 0/1/2."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path, examples = sys.argv[1:4]
schema = json.load(open(schema_path))
failures = []


def run(args):
    p = subprocess.run([cli] + args, capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout, p.stderr


def validate(cmd, report):
    sub = {"$defs": schema["$defs"], "$ref": "#/$defs/" + cmd}
    jsonschema.validate(report, sub)
    jsonschema.validate(report, schema)


count = 0
for line in open(examples + "/commands.txt"):
    line = line.strip()
    if not line or line.startswith("#"):
        continue
    args = line.replace("{ex}", examples).split()
    code, out, err = run(args + ["--json"])
    code2, out2, _ = run(args + ["--json"])
    tcode, tout, _ = run(args)
    count += 1
    if code != 0 or tcode != 0:
        failures.append(f"{line}: exit {code}/{tcode} {err.strip()}")
        continue
    if out != out2:
        failures.append(f"{line}: output differs between identical runs")
    try:
        validate(args[0], json.loads(out))
    except Exception as e:  # noqa: BLE001
        failures.append(f"{line}: {e}")

# the documented basis-change example
code, out, _ = run(["decompose", "--family", "D", "--a", "6", "--b", "9", "--json"])
if json.loads(out) != {"q0": "4", "q1": "1", "q2": "0"}:
    failures.append("decompose D(6,9): " + out)

# usage errors exit 2, computational failures exit 1 with an error report
for args in (["nosuch"], ["hf"], ["decompose", "--family", "C0"], ["hf", "x", "--range", "3"]):
    code, _, _ = run(args)
    if code != 2:
        failures.append(f"{args}: expected exit 2, got {code}")
code, out, _ = run(["restrict", examples + "/embedded_point.txt", "--form", "t", "--json"])
if code != 1:
    failures.append(f"restrict on a zero divisor: expected exit 1, got {code}")
else:
    validate("error", json.loads(out))
code, _, _ = run(["hf", examples + "/missing.txt"])
if code != 1:
    failures.append(f"missing file: expected exit 1, got {code}")

for f in failures:
    print("FAIL", f)
print(f"{count} example commands, {len(failures)} failures")
sys.exit(1 if failures else 0)
