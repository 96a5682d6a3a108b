"""The eleven acceptance criteria, exact, one test each.

Each run prints a single PASS/FAIL line; the lines are also collected and
repeated in the terminal summary so they survive output capture.
"""

import pytest

from oqroot.suite import CRITERIA

RESULTS: list = []


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number):
    check = CRITERIA[number - 1]()
    RESULTS.append(check)
    print(check.line())
    assert check.passed, "; ".join(map(str, check.failures[:5]))
