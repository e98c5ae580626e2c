"""The ten acceptance criteria, each printing one pass/fail line."""

from fractions import Fraction

import pytest

from reebspec import QuadExt
from reebspec.acceptance import CRITERIA, random_quadratic, ratio_sample, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


def test_random_ratios_are_irrational_and_in_range():
    rhos = ratio_sample(50, 1)
    assert len(set(rhos)) == 50
    assert all(not r.is_rational and 1 < r < 10 for r in rhos)


def test_random_quadratic_respects_bounds():
    import random

    rng = random.Random(0)
    for _ in range(200):
        x = random_quadratic(rng, Fraction(1, 3), Fraction(1, 2))
        assert isinstance(x, QuadExt) and Fraction(1, 3) < x < Fraction(1, 2)
