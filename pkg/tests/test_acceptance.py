"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) for just the summary lines.
"""

import sys

import pytest

from kanon.acceptance import CRITERIA, run_all


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda fn: fn.__name__)
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


if __name__ == "__main__":
    sys.exit(0 if all(r.passed for r in run_all()) else 1)
