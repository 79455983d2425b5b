"""Acceptance gate: every exit criterion at its stated tolerance.

Each criterion prints its PASS/FAIL line; all must pass within budget.
"""

import pytest

from treeperm.acceptance import ALL_CRITERIA


@pytest.mark.parametrize("criterion", ALL_CRITERIA, ids=lambda fn: fn.__name__)
def test_acceptance_criterion(criterion):
    result = criterion()
    print(result.line())
    assert result.ok, result.detail
    assert result.within_budget, (
        f"{result.name} took {result.elapsed:.1f}s, budget {result.budget}s")
