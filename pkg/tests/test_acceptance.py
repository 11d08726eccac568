"""Acceptance gate: one test per end-to-end suite.

Each test runs its suite at the default seed, prints a single PASS/FAIL
line with the elapsed time, and asserts both the verdict and the time
budget.  Run with -s (or rely on captured output on failure) to see the
lines.
"""

import time

import pytest

from lengthlab import acceptance

_BY_NAME = {name: (fn, budget) for name, fn, budget in acceptance.SUITES}


@pytest.mark.parametrize("name", list(_BY_NAME))
def test_suite(name):
    fn, budget = _BY_NAME[name]
    start = time.time()
    try:
        ok, detail = fn(acceptance.DEFAULT_SEED)
    except Exception as exc:
        ok, detail = False, f"exception: {exc!r}"
    elapsed = time.time() - start
    verdict = "PASS" if ok else "FAIL"
    print(f"{verdict} {name:20s} [{elapsed:8.2f}s / {budget}s] {detail}")
    assert elapsed < budget, f"{name} exceeded its {budget}s budget"
    assert ok, f"{name}: {detail}"
