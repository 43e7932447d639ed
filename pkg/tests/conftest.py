from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from laddernash.game import PayoffParams, Regime

# (criterion number, description, passed) for the acceptance summary.
ACCEPTANCE_RESULTS: list[tuple[int, str, bool]] = []

# Open intervals of y/x for each regime; None means unbounded.
RATIO_BOUNDS = {
    Regime.LONE_A: (Fraction(0), Fraction(1, 2)),
    Regime.MINORITY_A: (Fraction(1, 2), Fraction(1)),
    Regime.MINORITY_B: (Fraction(1), Fraction(2)),
    Regime.LONE_B: (Fraction(2), None),
}


@st.composite
def payoffs_in(draw, regime: Regime) -> PayoffParams:
    lo, hi = RATIO_BOUNDS[regime]
    x = draw(st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=30))
    top = lo + 10 if hi is None else hi
    ratio = draw(st.fractions(min_value=lo, max_value=top, max_denominator=40))
    if ratio in (lo, hi):
        ratio = (lo + top) / 2
    p = draw(st.fractions(min_value=-10, max_value=10, max_denominator=12))
    s = draw(st.fractions(min_value=-10, max_value=10, max_denominator=12))
    return PayoffParams(p=p, q=s + ratio * x, r=p + x, s=s)


def random_payoffs(rng, regime: Regime) -> PayoffParams:
    """Seeded counterpart of ``payoffs_in`` for plain loops."""
    lo, hi = RATIO_BOUNDS[regime]
    hi = lo + 8 if hi is None else hi
    while True:
        ratio = Fraction(rng.randint(1, 999), 1000) * (hi - lo) + lo
        if ratio not in (lo, hi):
            break
    x = Fraction(rng.randint(1, 400), rng.randint(1, 40))
    p = Fraction(rng.randint(-500, 500), rng.randint(1, 25))
    s = Fraction(rng.randint(-500, 500), rng.randint(1, 25))
    return PayoffParams(p, s + ratio * x, p + x, s)


@pytest.fixture
def record_criterion():
    def record(number: int, description: str, passed: bool) -> None:
        ACCEPTANCE_RESULTS.append((number, description, passed))
        print(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {description}")
        assert passed, f"criterion {number} failed: {description}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(
            f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {description}"
        )
