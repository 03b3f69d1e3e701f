"""Finite prediction tables over {0,1,2}: consistency, hits, halving.

Each row predicts bits of a set; the symbol 2 means "abstain".  The halve
transform folds predictions about a doubled sequence (every bit repeated)
into predictions about its half.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .codec import check_bits

Row = tuple[int, ...]


@dataclass(frozen=True)
class Parametrization:
    rows: tuple[Row, ...]
    depth: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != self.depth:
                raise ValueError("all rows must have the common depth")
            if any(symbol not in (0, 1, 2) for symbol in row):
                raise ValueError("row symbols must be in {0,1,2}")


def make_parametrization(rows: Sequence[Sequence[int]]) -> Parametrization:
    if not rows:
        raise ValueError("need at least one row")
    return Parametrization(tuple(tuple(r) for r in rows), len(rows[0]))


def consistent(row: Row, target: str) -> bool:
    """True iff every non-abstaining entry matches the target bit."""
    check_bits(target)
    if len(target) < len(row):
        raise ValueError("target must be at least as long as the row")
    return all(p == 2 or p == int(a) for p, a in zip(row, target))


def hits(row: Row) -> int:
    """Number of positions where the row commits to a bit."""
    return sum(1 for p in row if p != 2)


def halve_transform(p: Parametrization) -> Parametrization:
    """Fold each row pairwise: Q(x) = min(P(2x), P(2x+1)) under 0 < 1 < 2."""
    if p.depth % 2:
        raise ValueError("depth must be even")
    folded = tuple(
        tuple(min(row[2 * x], row[2 * x + 1]) for x in range(p.depth // 2))
        for row in p.rows
    )
    return Parametrization(folded, p.depth // 2)


def io_match_report(p: Parametrization, target: str) -> list[tuple[bool, int]]:
    """Per-row (consistent with target, number of committed positions)."""
    return [(consistent(row, target), hits(row)) for row in p.rows]


def load_parametrization(path) -> Parametrization:
    """Read a table file: one row per line over the alphabet {0,1,2}."""
    rows = []
    with open(path, encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if any(c not in "012" for c in line):
                raise ValueError(f"{path}:{lineno}: row must be over 0/1/2")
            rows.append(tuple(int(c) for c in line))
    if not rows:
        raise ValueError(f"{path}: empty parametrization")
    if len({len(r) for r in rows}) != 1:
        raise ValueError(f"{path}: rows have differing lengths")
    return make_parametrization(rows)
