from __future__ import annotations

import random
from fractions import Fraction

import pytest

from recmeasure.martingale import StrategyMartingale, TableMartingale, strings_up_to


def random_strategy_martingale(rng: random.Random, depth: int) -> StrategyMartingale:
    """A valid martingale with a random stake and prediction at every node."""
    choices: dict[str, tuple[Fraction, int]] = {}

    def rule(sigma: str) -> tuple[Fraction, int]:
        if sigma not in choices:
            choices[sigma] = (Fraction(rng.randint(0, 8), 8), rng.randint(0, 1))
        return choices[sigma]

    return StrategyMartingale(depth, Fraction(1), rule)


def as_table(m, depth: int) -> TableMartingale:
    return TableMartingale(depth, {s: m.value(s) for s in strings_up_to(depth)})


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260823)
