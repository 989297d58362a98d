#!/usr/bin/env python3
"""Smoke test for the zerosum_py extension module.

Loads the cdylib built by cargo (building it first if needed), then runs
value-level checks over every exported function.  Exits non-zero on the
first failure.

Usage: python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parents[1]


def locate_cdylib() -> Path:
    candidates = [
        REPO_ROOT / "target" / "release" / "libzerosum_py.so",
        REPO_ROOT / "target" / "debug" / "libzerosum_py.so",
    ]
    for path in candidates:
        if path.exists():
            return path
    print("cdylib not found, building it: cargo build -p zerosum-py")
    subprocess.run(
        ["cargo", "build", "-p", "zerosum-py"], cwd=REPO_ROOT, check=True
    )
    built = candidates[1]
    if not built.exists():
        sys.exit(f"expected {built} after the build")
    return built


def import_module():
    cdylib = locate_cdylib()
    stage = Path(tempfile.mkdtemp(prefix="zerosum_py_"))
    # Python importers want the module name as the file stem.
    shutil.copy2(cdylib, stage / "zerosum_py.so")
    sys.path.insert(0, str(stage))
    import zerosum_py

    return zerosum_py


def main() -> None:
    zs = import_module()
    print(f"loaded zerosum_py {zs.__version__}")

    # A qualifying witness for (0,1,2) mod 5 with nonzero A-weights.
    w = zs.check(5, "all-nonzero", "one", [0, 1, 2])
    assert w is not None
    assert w["indices"] == [0, 1, 2], w
    terms = [0, 1, 2]
    assert sum(a * terms[i] for i, a in zip(w["indices"], w["a_coeffs"])) % 5 == 0
    assert sum(a * b for a, b in zip(w["a_coeffs"], w["b_coeffs"])) % 5 == 0
    assert zs.verify_witness(
        5, "all-nonzero", "one", terms, w["indices"], w["a_coeffs"], w["b_coeffs"]
    )
    # The hand-written coefficient triple (4,2,4) for the same sequence.
    assert zs.verify_witness(5, "all-nonzero", "one", terms, [0, 1, 2], [4, 2, 4], [1, 1, 1])
    print("ok: check + verify_witness")

    # No consecutive block of (0,1,0) mod 4 qualifies.
    assert zs.check(4, "all-nonzero", "one", [0, 1, 0], mode="consecutive") is None
    # The full sequence (1,1,1) mod 3 qualifies at exact length 3.
    assert zs.check(3, "one", "one", [1, 1, 1], mode="exact:3") is not None
    print("ok: consecutive and exact modes")

    try:
        zs.verify_witness(5, "one", "one", [1, 2], [1, 0], [1, 1])
        raise SystemExit("expected ValueError for non-increasing indices")
    except ValueError:
        pass
    try:
        zs.check(5, "nonsense", "one", [1])
        raise SystemExit("expected ValueError for a bad weight-set spec")
    except ValueError:
        pass
    print("ok: malformed inputs raise ValueError")

    done = zs.constant("E", 6, "all-nonzero", "one")
    assert done["verdict"] == "COMPLETE"
    assert done["constant"]["value"] == 7, done
    assert done["constant"]["witness_extremal"]["terms"] is not None

    partial = zs.constant("C", 6, "one", "one", budget=500)
    assert partial["verdict"] == "BUDGET"
    assert partial["bounds"]["lower_bound"] == 30
    assert partial["bounds"]["upper_bound"] == 36
    print("ok: constant (complete and budget-limited)")

    enum = zs.extremal("D", 6, "all-nonzero", "one", "translate-of-equivalent")
    assert enum["value"] == 3
    assert len(enum["classes"]) == 1
    assert enum["classes"][0]["canonical"]["terms"] == [0, 1]
    assert enum["classes"][0]["orbit_size"] == 12
    print("ok: extremal enumeration")

    try:
        zs.extremal("C", 6, "one", "one", "equivalence", budget=10)
        raise SystemExit("expected BudgetError for an infeasible enumeration")
    except zs.BudgetError:
        pass
    print("ok: BudgetError raised on exhaustion")

    reports = zs.run_checks(checks="obs-star,thm-e1", n_min=2, n_max=4)
    assert len(reports) == 6, reports
    assert all(r["verdict"] == "PASS" for r in reports), reports

    cat = zs.catalog()
    ids = [entry["check_id"] for entry in cat]
    assert len(ids) == len(set(ids)) and len(ids) >= 30
    assert "obs-star" in ids
    print("ok: run_checks + catalog")

    assert zs.canonicalize(3, [2, 0, 1], "equivalence") == [0, 1, 2]
    assert zs.are_related(3, [2, 0, 1], [0, 1, 2], "equivalence")
    assert not zs.are_related(3, [2, 2, 1], [0, 1, 2], "translation-only")
    orb = zs.orbit(3, [0, 1], "translate-of-equivalent")
    assert [0, 1] in orb and len(orb) == 6, orb
    print("ok: canonicalize / are_related / orbit")

    assert zs.classify(6, 0) == "ZERO"
    assert zs.classify(6, 5) == "UNIT"
    assert zs.classify(6, 4) == "ZERO_DIVISOR"
    assert zs.weight_set_members(6, "units") == [1, 5]
    assert zs.weight_set_members(6, "minus-one") == [5]
    assert zs.weight_set_members(5, "{-1,7}") == [2, 4]
    print("ok: classify + weight_set_members")

    print("smoke test passed")


if __name__ == "__main__":
    main()
