"""Runs the CLI over a fixed set of invocations and validates the JSON output.

Also checks that text and JSON output report the same verdict and exit code.
"""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CLI, SCHEMAS = sys.argv[1], sys.argv[2]


def load(name):
    with open(os.path.join(SCHEMAS, name), encoding="utf-8") as fh:
        return json.load(fh)


OUTPUT = jsonschema.Draft202012Validator(load("cli-output.schema.json"))
CORPUS = jsonschema.Draft202012Validator(load("corpus-line.schema.json"))
failures = []


def run(args):
    p = subprocess.run([CLI, *args], capture_output=True, text=True, timeout=120)
    return p.returncode, p.stdout


def text_verdict(out):
    for line in out.splitlines():
        if line.startswith("verdict: "):
            return line.split(": ", 1)[1]
    return None


def check(args, expect_exit):
    code_j, out_j = run([*args, "--output", "json"])
    code_t, out_t = run(args)
    label = " ".join(args)
    if code_j != expect_exit:
        failures.append(f"{label}: json exit {code_j}, expected {expect_exit}")
    if code_t != code_j:
        failures.append(f"{label}: text exit {code_t} != json exit {code_j}")
    doc = json.loads(out_j)
    for err in OUTPUT.iter_errors(doc):
        failures.append(f"{label}: {err.message} at {list(err.absolute_path)}")
    if "valid" in doc:
        words = ("entailed", "not entailed") if doc["command"] == "entail" else ("valid", "invalid")
        want = words[0] if doc["valid"] else words[1]
        if text_verdict(out_t) != want:
            failures.append(f"{label}: text verdict {text_verdict(out_t)!r}, json says {want}")


with tempfile.TemporaryDirectory() as tmp:
    gamma = os.path.join(tmp, "gamma.txt")
    with open(gamma, "w", encoding="utf-8") as fh:
        fh.write("p\n!p\n")
    modus = os.path.join(tmp, "modus.txt")
    with open(modus, "w", encoding="utf-8") as fh:
        fh.write("p\np -> q\n")

    check(["check", "p -> p"], 0)
    check(["check", "p | ~p", "--filter", "1/2,1/2"], 0)
    check(["check", "p | ~p"], 1)
    check(["check", "p | ~p", "--mode", "linear"], 1)
    check(["check", "(p & !p) ~> q", "--logic", "luk-warrow"], 1)
    check(["check", "p | !p", "--logic", "godel-arrow"], 1)
    check(["check", "!(p & q) -> (!p | !q)", "--logic", "godel-arrow"], 0)
    check(["check", "p ~> p", "--logic", "godel-warrow", "--explain"], 0)
    check(["entail", modus, "q"], 0)
    check(["entail", gamma, "q", "--filter", "1,1"], 1)
    check(["entail", gamma, "q", "--filter", "1,1", "--logic", "godel-arrow"], 1)
    check(["eval", "p -> q", '{"p": ["1/5", "1/2"], "q": [0, 0]}'], 0)
    check(["nnf", "!(p & q)"], 0)
    check(["oracle", "p -> p"], 0)
    check(["oracle", "(p & !p) -> q", "--denominator", "2"], 0)
    check(["oracle", "p | !p", "--logic", "godel-arrow"], 0)

    for fam in (["fn", "--n", "2"], ["corpus", "--count", "20", "--logic", "godel-warrow"]):
        code, out = run(["gen", *fam, "--output", "json"])
        if code != 0:
            failures.append(f"gen {fam}: exit {code}")
        for line in out.splitlines():
            for err in CORPUS.iter_errors(json.loads(line)):
                failures.append(f"gen {fam}: {err.message}")

    code, _ = run(["check", "p ->", "--output", "json"])
    if code != 2:
        failures.append(f"parse error exit {code}, expected 2")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
