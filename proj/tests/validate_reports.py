"""Runs the CLI to produce every report type and validates each against its schema."""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    rnqc, schemas, corpus = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    validators = {
        p.name.removesuffix(".schema.json"): jsonschema.Draft202012Validator(json.loads(p.read_text()))
        for p in schemas.glob("*.schema.json")
    }
    env = dict(os.environ, SOURCE_DATE_EPOCH="1700000000")
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        circuit = tmp / "c.json"
        circuit.write_text(json.dumps({"qubits": 3, "gates": [
            {"g": "H", "q": [0]}, {"g": "CG", "q": [0, 1], "param": 2},
            {"g": "NCNOT", "q": [0, 1, 2]}, {"g": "Z", "q": [2]}, {"g": "H", "q": [1]}]}))
        t_circuit = tmp / "t.json"
        t_circuit.write_text(json.dumps({"qubits": 1, "gates": [{"g": "H", "q": [0]}, {"g": "T", "q": [0]}]}))
        cases = [
            ("majsat_report", ["solve", corpus / "or2.cnf", "--seed", "1", "--check"]),
            ("majsat_report", ["solve", corpus / "wide4.cnf", "--mode", "sampled", "--seed", "2"]),
            ("majsat_report", ["solve", corpus / "x1_n3.cnf", "--lowering", "primitive", "--seed", "3"]),
            ("majsat_report", ["solve", corpus / "or2.cnf", "--g-orientation", "literal", "--seed", "4"]),
            ("count", ["count", corpus / "or3_mixed.cnf"]),
            ("oracle_check", ["oracle-check", corpus / "wide5.cnf", "--lowering", "primitive"]),
            ("oracle_check", ["oracle-check", corpus / "or2.cnf", "--no-polarity-fix"]),
            ("lower", ["lower", circuit, "--to", "primitive"]),
            ("simulate", ["simulate", circuit, "--amplitudes", "--input", "101"]),
            ("simulate", ["simulate", t_circuit, "--amplitudes"]),
            ("pathsum", ["pathsum", circuit, "--yes-qubit", "2"]),
            ("pathsum", ["pathsum", t_circuit, "--projector", "yes", "--precision-c", "12"]),
        ]
        for k, (schema, args) in enumerate(cases):
            out = tmp / f"report{k}.json"
            cmd = [rnqc] + [str(a) for a in args] + ["--json", str(out)]
            proc = subprocess.run(cmd, env=env, capture_output=True, text=True)
            if proc.returncode not in (0, 1) or not out.exists():
                print(f"FAIL {' '.join(cmd[1:])}: exit {proc.returncode} {proc.stderr.strip()}")
                failures += 1
                continue
            report = json.loads(out.read_text())
            errors = list(validators[schema].iter_errors(report))
            if schema == "lower":
                errors += list(validators["circuit"].iter_errors(report["circuit"]))
            for e in errors:
                print(f"FAIL {schema} {' '.join(cmd[1:3])}: {e.json_path}: {e.message}")
            failures += bool(errors)
            if not errors:
                print(f"ok   {schema:14} {' '.join(str(a) for a in args[:2])}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
