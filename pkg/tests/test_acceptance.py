"""Acceptance criteria 1-10, each at its stated tolerance and time budget.

Every test prints one PASS/FAIL line (visible with ``pytest -s`` or in the
summary of ``pytest -v``) and fails if the criterion fails or runs over its
time budget.
"""

import pytest

from arcalc import verify

CRITERIA = [
    ("1", verify.check_orbit),
    ("2", verify.check_periodicity),
    ("3", verify.check_cor64),
    ("4", verify.check_graded),
    ("5", verify.check_mimo_properties),
    ("6", verify.check_ar_structure),
    ("7", verify.check_finite_type),
    ("8", verify.check_brute_force),
    ("9", verify.check_classification),
    ("10", verify.check_determinism),
]


@pytest.mark.acceptance
@pytest.mark.parametrize("number,check", CRITERIA, ids=[f"criterion_{n}" for n, _ in CRITERIA])
def test_criterion(number, check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line(timing=True), flush=True)
    assert result.ok, f"{result.line()}; failures: {result.failures[:5]}"
