"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Tolerance everywhere is exact equality (a residual must be the zero
polynomial); the probes in criterion 8 run with seed 0, degree bound 3 and
50 trials.  Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

import pytest

from lcworkbench.acceptance import CRITERIA, run_criterion

RUNTIME_TARGET = {1: 60, 3: 30, 5: 120, 8: 120}
PROBE = {"seed": 0, "degree_bound": 3, "trials": 50}
TOLERANCE = {n: "exact" for n in CRITERIA}
TOLERANCE[8] = "seed 0, degree bound 3, 50 trials"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    res = run_criterion(n, **PROBE)
    secs = res["_seconds"]
    verdict = "PASS" if res["pass"] else "FAIL"
    extra = f"; failed: {', '.join(res['failed'])}" if res["failed"] else ""
    print(f"\ncriterion {n}: {verdict} {res['title']} [{TOLERANCE[n]}] ({secs:.1f}s){extra}")
    assert res["pass"], res["failed"]
    if n in RUNTIME_TARGET:
        assert secs < RUNTIME_TARGET[n]
