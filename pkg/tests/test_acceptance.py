"""The ten acceptance criteria at full bounds, each under its time limit."""
from __future__ import annotations

import pytest

from finoperad import acceptance

from conftest import ACCEPTANCE_LINES

# criterion key -> wall-clock limit in seconds
LIMITS = {
    "factorization": 5,
    "smash": 10,
    "gamma": 60,
    "phi": 60,
    "operad": 30,
    "fibration": 10,
    "contractibility": 300,
    "pushout": 30,
    "dayconv": 60,
    "free": 60,
}


def test_every_criterion_has_a_limit():
    assert [k for k, _ in acceptance.CRITERIA] == list(LIMITS)


@pytest.mark.parametrize("key", list(LIMITS))
def test_criterion_full(key):
    result = acceptance.run_criterion(key, "full")
    ok = result.passed and result.seconds < LIMITS[key]
    line = (f"{'PASS' if ok else 'FAIL'} {key:<16} {result.name}: {result.seconds:.2f} s "
            f"(limit {LIMITS[key]} s) {result.details}")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, result.witnesses[:3]
    assert result.seconds < LIMITS[key]
