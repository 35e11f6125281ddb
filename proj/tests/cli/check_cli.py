"""End-to-end checks of the alphaport executable: schema validity of every
JSON report, byte-identical reruns, exit codes and ALPHAPORT_MAX_ITERS."""

import json
import os
import subprocess
import sys

import jsonschema

BIN, SCHEMA, DATA = sys.argv[1:4]

with open(SCHEMA) as fh:
    schema = json.load(fh)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

failures = []


def run(args, env=None):
    full_env = dict(os.environ)
    full_env.pop("ALPHAPORT_MAX_ITERS", None)
    full_env.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env)


def check(name, ok, detail=""):
    print(("ok   " if ok else "FAIL ") + name + (f": {detail}" if detail and not ok else ""))
    if not ok:
        failures.append(name)


JSON_CASES = [
    ["analyze", "--canonical", "fig_a1", "--f", "1:1,1:3", "--vin", "1"],
    ["analyze", "--netlist", f"{DATA}/weighted.net", "--vin", "0.3"],
    ["alpha-test", "--canonical", "fig4", "--alpha", "2"],
    ["alpha-test", "--canonical", "ladder", "--sections", "6", "--central", "--alpha", "0.5"],
    ["superpose", "--canonical", "fig_a1", "--f", "1:1,1:3", "--vin", "1"],
    ["superpose", "--canonical", "fig3", "--f", "1:1,1:2,0.5:3", "--vin", "0.4"],
    ["ladder", "--alpha", "3"],
    ["ladder", "--alpha-grid", "0.5,1,2,3", "--central"],
    ["mesh", "--canonical", "fig_b1", "--alpha", "2", "--iin", "1"],
    ["mesh", "--netlist", f"{DATA}/bridge_mesh.net", "--f", "1:1,1:2", "--iin", "0.5"],
    ["sweep", "--canonical", "fig_a1", "--f", "1:1,1:3", "--vin-grid", "0.001,0.1,1,10"],
    ["sweep", "--canonical", "fig4", "--alpha-grid", "1,1.5,2,3,4,6"],
    ["sweep", "--error-table"],
]

for args in JSON_CASES:
    label = " ".join(args)
    first = run([*args, "--format", "json"])
    check(f"exit 0: {label}", first.returncode == 0, first.stderr)
    if first.returncode != 0:
        continue
    doc = json.loads(first.stdout)
    errors = sorted(validator.iter_errors(doc), key=str)
    check(f"schema: {label}", not errors, "; ".join(e.message for e in errors[:3]))
    second = run([*args, "--format", "json"])
    check(f"byte-identical rerun: {label}", first.stdout == second.stdout)
    for fmt in ("csv", "text"):
        out = run([*args, "--format", fmt])
        check(f"{fmt} output: {label}", out.returncode == 0 and out.stdout.strip() != "", out.stderr)

meta = run(["ladder", "--alpha", "2", "--format", "json", "--meta"])
doc = json.loads(meta.stdout)
check("meta record validates", not list(validator.iter_errors(doc)) and "generated_at" in doc.get("meta", {}))
plain = json.loads(run(["ladder", "--alpha", "2", "--format", "json"]).stdout)
doc.pop("meta")
check("meta does not touch the payload", doc == plain)

superpose = json.loads(run(["superpose", "--canonical", "fig_a1", "--f", "1:1,1:3", "--vin", "1", "--format", "json"]).stdout)
res = superpose["result"]
check("superpose F", abs(res["F"] - 2.7452378) < 1e-6, str(res["F"]))
check("superpose G", abs(res["G"] - 2.73252) < 5e-4, str(res["G"]))
check("superpose eta", abs(res["eta"] - 0.0046) < 3e-4, str(res["eta"]))

csv_rows = run(["ladder", "--alpha", "3", "--format", "csv"]).stdout.splitlines()
check("ladder csv row", csv_rows[1].startswith("3,3.024688"), csv_rows[1])

text = run(["alpha-test", "--canonical", "fig4", "--alpha", "2"]).stdout
check("fig4 phi text", "phi = 1.22222222" in text, text)

EXIT_CASES = [
    (["sweep", "--canonical", "fig_a1", "--f", "1:1,1:3", "--vin-grid", ""], 1),
    (["sweep", "--canonical", "fig4", "--alpha-grid", ""], 1),
    (["superpose", "--canonical", "fig_a1", "--vin", "1"], 1),
    (["superpose", "--canonical", "nosuch", "--f", "1:1", "--vin", "1"], 1),
    (["analyze", "--canonical", "fig_a1", "--f", "1:-1", "--vin", "1"], 1),
    (["analyze", "--canonical", "fig_a1", "--f", "1:1", "--vin", "-1"], 1),
    (["analyze", "--netlist", f"{DATA}/missing.net", "--f", "1:1", "--vin", "1"], 1),
    (["mesh", "--canonical", "fig_a1", "--alpha", "2", "--iin", "1"], 1),
    (["ladder"], 1),
    (["frobnicate"], 1),
    (["alpha-test", "--canonical", "fig4", "--alpha", "2", "--format", "yaml"], 1),
]
for args, code in EXIT_CASES:
    out = run(args)
    check(f"exit {code}: {' '.join(args) or '<none>'}", out.returncode == code, f"got {out.returncode}")

starved = run(["superpose", "--canonical", "fig_a1", "--f", "1:1,1:3", "--vin", "1"], {"ALPHAPORT_MAX_ITERS": "1"})
check("ALPHAPORT_MAX_ITERS=1 gives solver failure", starved.returncode == 2, f"got {starved.returncode}")
roomy = run(["superpose", "--canonical", "fig_a1", "--f", "1:1,1:3", "--vin", "1"], {"ALPHAPORT_MAX_ITERS": "50"})
check("ALPHAPORT_MAX_ITERS=50 succeeds", roomy.returncode == 0, roomy.stderr)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
