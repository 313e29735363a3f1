# Copyright 2026 The spinpauli Authors
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

"""End-to-end checks of the spinpauli CLI.

Usage: cli_test.py BINARY REPO_ROOT CASE
"""

import csv
import io
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
import referencing

BIN = pathlib.Path(sys.argv[1])
ROOT = pathlib.Path(sys.argv[2])
SCHEMAS = ROOT / "schemas"
GOLDEN = ROOT / "tests" / "golden"
PLANS = ROOT / "examples" / "spinpauli"


def registry():
    resources = []
    for path in sorted(SCHEMAS.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], referencing.Resource.from_contents(doc)))
    return referencing.Registry().with_resources(resources)


REGISTRY = registry()


def validate(doc, schema_name):
    schema = json.loads((SCHEMAS / schema_name).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def run(*args, expect=0):
    proc = subprocess.run([str(BIN), *args], capture_output=True, text=True, timeout=300)
    if proc.returncode != expect:
        raise AssertionError(
            f"{' '.join(args)}: exit {proc.returncode}, expected {expect}\n"
            f"stdout:\n{proc.stdout}\nstderr:\n{proc.stderr}")
    return proc.stdout


def run_json(schema_name, *args, expect=0):
    """Runs twice, checks byte equality, validates, returns the parsed doc."""
    first = run(*args, "--json", expect=expect)
    second = run(*args, "--json", expect=expect)
    assert first == second, f"{' '.join(args)}: JSON differs between identical runs"
    doc = json.loads(first)
    validate(doc, schema_name)
    return doc


def case_verify_sweep():
    out = run("verify", "--n", "1..10", "--samples", "50")
    assert "all checks passed" in out


def case_verify_dense_limit():
    run("verify", "--n", "20", expect=2)
    run("verify", "--n", "2", "--axes", "XYZ", expect=2)
    run("verify", "--n", "2", "--axes", "XI", expect=2)
    run("verify", "--n", "5..3", expect=2)


def case_verify_json():
    doc = run_json("verify.schema.json", "verify", "--n", "2", "--axes", "XX")
    assert doc["pass"]
    assert all(r["axes"] == "XX" and r["n"] == 2 and r["branch"] == "even" for r in doc["reports"])
    for r in doc["reports"]:
        validate(r, "verification_report.schema.json")
    doc = run_json("verify.schema.json", "verify", "--n", "1..4", "--samples", "5", "--seed", "99")
    assert doc["seed"] == 99 and doc["pass"]


def outcomes(doc):
    return [r["outcome"] for r in doc["results"]]


def case_syndrome_examples():
    doc = run_json("syndrome.schema.json", "syndrome", "--stab", "ZZZ", "--state", "down", "--backend", "both")
    assert outcomes(doc) == [-1, -1]
    doc = run_json("syndrome.schema.json", "syndrome", "--stab", "XX", "--state", "ghz+", "--backend", "both")
    assert outcomes(doc) == [1, 1]
    doc = run_json("syndrome.schema.json", "syndrome", "--stab", "XIZ", "--backend", "both", "--seed", "7")
    assert doc["agree"] and outcomes(doc)[0] == outcomes(doc)[1]
    doc = run_json("syndrome.schema.json", "syndrome", "--stab", "XXXX", "--state", "ghz+", "--backend", "dense")
    r = doc["results"][0]
    assert r["outcome"] == 1 and r["collective_ops"] == 2 and abs(r["fidelity"] - 1) < 1e-12


def case_syndrome_shots():
    # X on |↓↓⟩ gives ±1 with equal weight; both backends consume the same uniforms.
    doc = run_json("syndrome.schema.json", "syndrome", "--stab", "XX", "--backend", "both", "--shots", "200")
    dense, tab = doc["results"]
    assert doc["agree"] and dense["plus_count"] == tab["plus_count"]
    assert 60 < dense["plus_count"] < 140


def case_syndrome_state_file():
    with tempfile.NamedTemporaryFile("w", suffix=".amps", delete=False) as f:
        # (|↓↓⟩ + |↑↑⟩)/√2 written out by hand.
        h = 2 ** -0.5
        f.write(f"{h} 0\n0 0\n0 0\n{h} 0\n")
        path = f.name
    doc = run_json("syndrome.schema.json", "syndrome", "--stab", "ZZ", "--state", path)
    assert outcomes(doc) == [1]
    run("syndrome", "--stab", "ZZ", "--state", path, "--backend", "tableau", expect=2)
    run("syndrome", "--stab", "ZZZ", "--state", path, expect=2)
    pathlib.Path(path).unlink()


def case_parity():
    doc = run_json("parity.schema.json", "parity", "--n", "1000", "--backend", "tableau")
    assert outcomes(doc) == [1] and doc["results"][0]["total_ops"] == 4
    doc = run_json("parity.schema.json", "parity", "--n", "3", "--state", "010", "--backend", "both")
    assert outcomes(doc) == [1, 1] and doc["results"][0]["total_ops"] == 3
    doc = run_json("parity.schema.json", "parity", "--n", "3", "--state", "000", "--backend", "both")
    assert outcomes(doc) == [-1, -1]
    run("parity", "--n", "1000", "--backend", "dense", expect=2)


def case_compile_css():
    text = run("compile", "--stab", "XXXX", "--strategy", "css")
    ops = [line.split()[0] for line in text.splitlines() if line and not line.startswith("#")]
    assert ops.count("MS") == 1, text
    doc = run_json("compile.schema.json", "compile", "--stab", "XXXX", "--strategy", "css")
    assert doc["schedule"]["strategy"] == "css"
    run("compile", "--stab", "XZ", "--strategy", "css", expect=2)
    run("compile", "--stab", "XZ", "--strategy", "warp", expect=2)


def case_compile_golden():
    for path in sorted(GOLDEN.glob("*.sched")):
        strategy, stab = path.stem.split("_")
        assert run("compile", "--stab", stab, "--strategy", strategy) == path.read_text(), path.name
        with tempfile.TemporaryDirectory() as d:
            out = pathlib.Path(d) / "s.sched"
            run("compile", "--stab", stab, "--strategy", strategy, "--out", str(out))
            assert out.read_text() == path.read_text()


def case_compile_json_all():
    for strategy in ["conjugated", "refocused", "addressed", "baseline"]:
        for stab in ["XIZ", "YYY", "ZIIZ", "XYZXY"]:
            doc = run_json("compile.schema.json", "compile", "--stab", stab, "--strategy", strategy)
            cost = doc["schedule"]["cost"]
            if strategy == "baseline":
                assert cost["two_qubit_ops"] == doc["report"]["weight"]
            else:
                assert cost["collective_ops"] in (1, 2) and cost["two_qubit_ops"] == 0


def case_bench_parity():
    text = run("bench", "--parity", "--n", "2..64")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [int(r["n"]) for r in rows] == list(range(2, 65))
    for r in rows:
        n = int(r["n"])
        assert int(r["spin_spin_collective"]) == (1 if (n + 1) % 2 == 0 else 2)
        assert int(r["baseline_two_qubit"]) == n
    assert len({r["spin_spin_depth"] for r in rows}) <= 2
    doc = run_json("bench.schema.json", "bench", "--parity", "--n", "2..16")
    assert len(doc["reports"]) == 15
    doc = run_json("bench.schema.json", "bench", "--stab", "XXXX", "--stab", "XIZ", "--strategy", "addressed")
    assert [r["stabilizer"] for r in doc["reports"]] == ["XXXX", "XIZ"]
    run("bench", expect=2)
    run("bench", "--parity", "--strategy", "baseline", expect=2)


def case_prepare_examples():
    for path in sorted(PLANS.glob("*.json")):
        validate(json.loads(path.read_text()), "code_prep_plan.schema.json")
        doc = run_json("prepare.schema.json", "prepare", "--plan", str(path), "--backend", "both")
        assert doc["pass"], path.name
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
        json.dump({"generators": ["XX", "ZI"]}, f)
        bad = f.name
    run("prepare", "--plan", bad, expect=2)
    pathlib.Path(bad).write_text("{not json")
    run("prepare", "--plan", bad, expect=2)
    pathlib.Path(bad).unlink()


def case_usage_errors():
    run(expect=2)
    run("frobnicate", expect=2)
    run("syndrome", expect=2)
    run("syndrome", "--stab", "XQ", expect=2)
    run("syndrome", "--stab", "XX", "--backend", "gpu", expect=2)
    run("syndrome", "--stab", "XX", "--state", "01x", expect=2)
    run("syndrome", "--stab", "XX", "--shots", "0", expect=2)
    run("parity", "--n", "2..4", expect=2)
    run("verify", "--samples", "0", "--n", "2", expect=2)


CASES = {name[len("case_"):]: fn for name, fn in globals().items() if name.startswith("case_")}

if __name__ == "__main__":
    CASES[sys.argv[3]]()
    print(f"{sys.argv[3]}: ok")
