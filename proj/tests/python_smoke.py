"""Smoke test for the python package and the CLI exit-code contract.

Usage: python_smoke.py <path-to-lgq-cli>

Run through ctest, PYTHONPATH carries both the compiled extension directory
and the source python/ package directory.
"""

import json
import math
import subprocess
import sys

CLI = sys.argv[1]

failures = []


def check(label, cond):
    print(("ok   " if cond else "FAIL ") + label)
    if not cond:
        failures.append(label)


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


# --- CLI exit codes: 0 success, 2 validation failure, 3 parse/config ---------

r = run("classify-matrix", "1", "1", "0", "1")
check("classify-matrix exits 0", r.returncode == 0)
check("classify-matrix reports UNIPOTENT", "UNIPOTENT" in r.stdout)

r = run("validate-wdata", "--psi1", "z", "--psi2", "i", "--f", "1",
        "--rect", "-2", "2", "-2", "2")
check("gap-flag validation exits 2", r.returncode == 2)
rep = json.loads(r.stdout)
check("gap-flag report still written", rep["report"]["gap_flag"] is True)
check("gap-flag report marks not ok", rep["report"]["all_ok"] is False)

r = run("validate-wdata", "--catalog", "nope-1.1")
check("unknown catalog name exits 3", r.returncode == 3)

r = run("solve-ef", "--P", "1", "--no-such-flag")
check("bad flag exits 3", r.returncode == 3)

r = run("hyperplane-area", "II", "--format", "json")
check("hyperplane-area exits 0", r.returncode == 0)
area = json.loads(r.stdout)
check("case II area verdict FINITE", area["verdict"] == "FINITE")
check("case II signed area is 4*pi",
      abs(area["signed_value"] - 4 * math.pi) < 1e-4)

# --- python package ----------------------------------------------------------

import lgq  # noqa: E402

names = lgq.catalog_names()
check("catalog has 10 entries", len(names) == 10)
check("catalog includes ma-wang-wang-4.34", "ma-wang-wang-4.34" in names)

cls = lgq.classify_matrix(1, 1, 0, 1)
check("python classify_matrix decodes JSON",
      cls["class"]["tag"] == "UNIPOTENT")

gap = lgq.hermitian_gap(complex(0, 1), complex(1, 2))
check("hermitian_gap value", abs(gap - 2 * abs(complex(1, 2) - complex(0, -1)) ** 2) < 1e-14)

ef = lgq.solve_ef([1], [0, 0, 0, 1])  # f(w) = 1/w^3
check("solve_ef 1/w^3 finds 2 roots", len(ef["result"]["roots"]) == 2)
check("solve_ef index sum is m-1", ef["result"]["index_sum"] == 2)

err_seen = False
try:
    lgq.validate_wdata(catalog="nope-1.1")
except lgq.LgqError as exc:
    err_seen = "UNKNOWN_EXAMPLE" in str(exc)
check("python surfaces typed errors", err_seen)

print()
if failures:
    print(f"{len(failures)} smoke check(s) failed")
    sys.exit(1)
print("all smoke checks passed")
