#!/usr/bin/env python3
"""Runs the divprod CLI and checks outputs against the shipped schemas,
exit codes, and byte-for-byte reproducibility.

usage: validate_outputs.py <divprod-binary> <schema-dir>
"""

import json
import os
import re
import subprocess
import sys
import tempfile

import jsonschema

BINARY, SCHEMAS = sys.argv[1], sys.argv[2]
failures = []


def schema(name):
    with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
        return json.load(f)


def run(*args):
    p = subprocess.run([BINARY, *args], capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout, p.stderr


def expect(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL", what)


def check_json(name, args, code=0, repeatable=True):
    rc, out, err = run(*args)
    expect(rc == code, f"{' '.join(args)}: exit {rc}, expected {code}: {err.strip()}")
    if rc != 0:
        return None
    lines = out.splitlines()
    expect(len(lines) == 1, f"{' '.join(args)}: expected one line of JSON")
    doc = json.loads(out)
    try:
        jsonschema.validate(doc, schema(name))
    except jsonschema.ValidationError as e:
        expect(False, f"{' '.join(args)}: {e.message}")
    if not repeatable:
        return doc
    rc2, out2, _ = run(*args)
    expect(out == out2, f"{' '.join(args)}: output differs between runs")
    return doc


def check_error(args, code, kind):
    rc, out, err = run(*args)
    expect(rc == code, f"{' '.join(args)}: exit {rc}, expected {code}")
    expect(out == "", f"{' '.join(args)}: unexpected stdout on error")
    expect(err.count("\n") == 1 and err.endswith("\n"), f"{' '.join(args)}: stderr not one line")
    try:
        doc = json.loads(err)
        jsonschema.validate(doc, schema("error"))
        expect(doc["error"] == kind, f"{' '.join(args)}: error kind {doc['error']}")
        return doc
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        expect(False, f"{' '.join(args)}: bad error payload: {e}")
    return None


for name in os.listdir(SCHEMAS):
    with open(os.path.join(SCHEMAS, name)) as f:
        jsonschema.Draft202012Validator.check_schema(json.load(f))

with tempfile.TemporaryDirectory() as tmp:
    def write(name, text):
        path = os.path.join(tmp, name)
        with open(path, "w") as f:
            f.write(text)
        return path

    bad = write("bad.txt", "2\n3\n4\n")
    good = write("good.txt", "2\n3\n5\n")

    doc = check_json("check", ["check", "--file", bad, "--h", "2"])
    expect(doc == {"h": 2, "size": 3, "holds": False,
                   "witness": {"pivot": 2, "cofactors": [3, 4]}}, "check verdict on {2,3,4}")
    doc = check_json("check", ["check", "--file", good, "--h", "2"])
    expect(doc["holds"] is True and doc["witness"] is None, "check verdict on {2,3,5}")
    check_json("rs-check", ["rs-check", "--file", bad, "--r", "1", "--s", "2"])
    check_json("rs-check", ["rs-check", "--file", good, "--r", "2", "--s", "1"])

    doc = check_json("count", ["count", "--n", "5", "--h", "2"])
    expect(doc["count"] == "18", "count n=5 h=2")
    check_json("count", ["count", "--n", "20", "--h", "3", "--timing"], repeatable=False)
    reference = run("count", "--n", "36", "--h", "2")[1]
    for workers in ("1", "2", "8"):
        expect(run("--workers", workers, "count", "--n", "36", "--h", "2")[1] == reference,
               f"count output differs with --workers {workers}")

    check_json("extremal", ["extremal", "--n", "30", "--h", "2"])
    doc = check_json("tn", ["tn", "--n", "30"])
    expect(doc["tn"] == "720" and doc["grouped_agrees"] is True, "tn n=30")
    check_json("alpha", ["alpha", "--terms", "10000"])
    check_json("bounds", ["bounds", "--n", "10000", "--h", "2", "--format", "json"])
    check_json("bounds", ["bounds", "--n", "10000", "--h", "4", "--format", "json"])
    check_json("count-families", ["count-families", "--n", "30", "--h", "2"])
    doc = check_json("count-families", ["count-families", "--n", "100", "--h", "3"])
    expect(doc["count"] == "842764124160", "count-families n=100 h=3")

    rc, out, _ = run("bounds", "--n", "10000", "--h", "3")
    lines = out.splitlines()
    expect(rc == 0 and lines[0] == "n,h,log_T,envelope_low,envelope_high,alpha_low,alpha_high"
           and len(lines) == 2 and len(lines[1].split(",")) == 7, "bounds CSV shape")

    family_line = re.compile(r"^# n=\d+ h=\d+ seed=\d+ cut=\S+$")
    for args in (["--seed", "3", "construct-h2", "--n", "2000"],
                 ["--seed", "3", "construct-h3", "--n", "2000", "--h", "3"],
                 ["--seed", "3", "construct-h3", "--n", "2000", "--h", "5", "--cut", "sqrt"]):
        rc, out, err = run(*args)
        expect(rc == 0, f"{' '.join(args)}: exit {rc} {err}")
        lines = out.splitlines()
        expect(bool(family_line.match(lines[0])), f"{' '.join(args)}: header {lines[0]!r}")
        values = [int(x) for x in lines[1:]]
        expect(values == sorted(set(values)), f"{' '.join(args)}: elements not increasing")
        expect(run(*args)[1] == out, f"{' '.join(args)}: output differs between runs")
        h = args[args.index("--h") + 1] if "--h" in args else "2"
        path = write("family.txt", out)
        doc = check_json("check", ["check", "--file", path, "--h", h])
        expect(doc["holds"] is True, f"{' '.join(args)}: family fails P_{h}")

    graph = os.path.join(tmp, "graph.txt")
    rc, _, _ = run("construct-h2", "--n", "100000", "--hypergraph-out", graph)
    expect(rc == 0 and os.path.getsize(graph) > 0, "hypergraph file written")

    rc, basis, _ = run("basis", "--n", "100", "--h", "2")
    expect(rc == 0 and re.match(r"^# n=100 h=2 size=\d+ verified=true\n", basis) is not None,
           "basis header")
    basis_path = write("basis.txt", basis)
    primes = write("primes.txt", "11\n13\n97\n")
    rc, out, _ = run("verify-injection", "--set", primes, "--basis", basis_path)
    expect(rc == 0 and out == "11 11\n13 13\n97 97\n# unmatched:\n", "identity injection")

    out_file = os.path.join(tmp, "out.json")
    rc, out, _ = run("--out", out_file, "tn", "--n", "100")
    with open(out_file) as f:
        expect(rc == 0 and out == "" and json.load(f)["tn"] == "19110297600", "--out file")

    check_error(["count", "--n", "5"], 2, "invalid-argument")
    check_error(["count", "--n", "5", "--h", "0"], 2, "invalid-argument")
    check_error(["no-such-command"], 2, "invalid-argument")
    check_error(["check", "--file", os.path.join(tmp, "missing.txt"), "--h", "2"], 2,
                "invalid-argument")
    check_error(["check", "--file", write("dup.txt", "2\n2\n"), "--h", "2"], 2,
                "invalid-argument")
    check_error(["construct-h3", "--n", "100", "--h", "2"], 2, "invalid-argument")
    check_error(["count", "--n", "30", "--h", "2", "--node-budget", "3"], 3, "resource-limit")
    check_error(["count", "--n", "100", "--h", "2"], 3, "resource-limit")
    check_error(["tn", "--n", "1000000000"], 3, "resource-limit")
    doc = check_error(["verify-injection", "--set", bad, "--basis", basis_path], 4,
                      "precondition-failure")
    expect(doc is not None and doc.get("witness") == {"pivot": 2, "cofactors": [3, 4]},
           "precondition witness")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
