"""Clopen subsets of Cantor space, Kurtz tests and exact measure arithmetic.

A clopen set is generated by a finite antichain of binary strings; its
measure is the exact dyadic sum over the generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import codec
from .codec import Family, check_bits, logpart_size, s_index


def _is_antichain(strings: frozenset[str]) -> bool:
    return not any(
        a != b and b.startswith(a) for a in strings for b in strings
    )


@dataclass(frozen=True)
class ClopenSet:
    generators: frozenset[str]

    def __post_init__(self) -> None:
        for g in self.generators:
            check_bits(g)
        if not _is_antichain(self.generators):
            raise ValueError("generators must form an antichain")

    def measure(self) -> Fraction:
        return sum(
            (Fraction(1, 2 ** len(g)) for g in self.generators), Fraction(0)
        )

    def sorted_generators(self) -> list[str]:
        return sorted(self.generators, key=lambda g: (len(g), g))


EMPTY = ClopenSet(frozenset())


def normalize(strings: Iterable[str]) -> ClopenSet:
    """Drop every string that has a proper prefix in the set."""
    pool = {check_bits(s) for s in strings}
    kept = frozenset(
        s for s in pool if not any(s != p and s.startswith(p) for p in pool)
    )
    return ClopenSet(kept)


def measure(c: ClopenSet) -> Fraction:
    return c.measure()


@dataclass(frozen=True)
class KurtzTest:
    """Levels G_0..G_k with measure(G_i) <= 2^-i."""

    levels: tuple[ClopenSet, ...]


def kurtz_validate(test: KurtzTest) -> list[str]:
    """All levels whose measure exceeds the 2^-i bound."""
    violations = []
    for i, level in enumerate(test.levels):
        mu = level.measure()
        if mu > Fraction(1, 2**i):
            violations.append(f"level {i} has measure {mu} > 1/{2 ** i}")
    return violations


def engulf_transform(
    rows: Sequence[KurtzTest], j: int, i_max: int
) -> tuple[ClopenSet, Fraction]:
    """Union of the shifted diagonal cells G_{i, i+j+1} with its measure bound.

    Returns (F_j, bound) where bound = (1 - 2^-(i_max+1)) * 2^-j and
    measure(F_j) <= bound <= 2^-j.
    """
    if j < 0 or i_max < 0:
        raise ValueError("j and i_max must be natural numbers")
    if len(rows) <= i_max:
        raise ValueError(f"need rows 0..{i_max}, got {len(rows)}")
    generators: set[str] = set()
    for i in range(i_max + 1):
        k = i + j + 1
        if len(rows[i].levels) <= k:
            raise ValueError(f"row {i} is missing level {k}")
        bad = kurtz_validate(rows[i])
        if bad:
            raise ValueError(f"row {i} is not a Kurtz test: {bad[0]}")
        generators |= rows[i].levels[k].generators
    f_j = normalize(generators)
    bound = (1 - Fraction(1, 2 ** (i_max + 1))) * Fraction(1, 2**j)
    return f_j, bound


@dataclass(frozen=True)
class AvoidanceAssignment:
    """Forbidden word per interval index; indices must be distinct."""

    pairs: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        indices = [m for m, _ in self.pairs]
        if len(indices) != len(set(indices)):
            raise ValueError("interval indices must be distinct")
        for _, sigma in self.pairs:
            check_bits(sigma)


def avoidance_measure(assignment: AvoidanceAssignment, family: Family) -> Fraction:
    """Measure of the sequences avoiding every forbidden word on its interval.

    Distinct intervals are disjoint, so the factors multiply exactly.
    """
    result = Fraction(1)
    for m, sigma in assignment.pairs:
        size = codec.interval(family, m).size
        if len(sigma) != size:
            raise ValueError(
                f"word for interval {m} has length {len(sigma)}, expected {size}"
            )
        result *= 1 - Fraction(1, 2**size)
    return result


def _check_term_comparison(e: int, n: int, size: int) -> None:
    # integerized form of the comparison chain bounding the n-th factor
    if n >= e + 2 and 2**size > 64 * (e + 1) ** 2 * (n + 1):
        raise RuntimeError(
            f"interval size comparison failed at e={e}, n={n}: "
            f"2^{size} > 64*(e+1)^2*(n+1)"
        )


def dnr_cover_product(e: int, n_max: int) -> list[Fraction]:
    """Partial products prod_{n<=N} (1 - 2^-|I_{s(e,n)}|) for N = 0..n_max.

    Strictly decreasing and positive; each factor's interval size also
    passes the integerized comparison against 64(e+1)^2(n+1).
    """
    if e < 0 or n_max < 0:
        raise ValueError("e and n_max must be natural numbers")
    partials = []
    product = Fraction(1)
    for n in range(n_max + 1):
        size = logpart_size(s_index(e, n))
        _check_term_comparison(e, n, size)
        product *= 1 - Fraction(1, 2**size)
        partials.append(product)
    return partials


def divergence_partial(e: int, n_max: int) -> Fraction:
    """Exact value of (1/64) (e+1)^-2 sum_{n=e+2}^{N} 1/(n+1)."""
    if n_max < e + 2:
        raise ValueError("need n_max >= e + 2")
    harmonic = sum(
        (Fraction(1, n + 1) for n in range(e + 2, n_max + 1)), Fraction(0)
    )
    return Fraction(1, 64) * Fraction(1, (e + 1) ** 2) * harmonic


def load_clopen(path) -> ClopenSet:
    """Read a clopen set file: one generator per line, ``-`` for the root."""
    strings = []
    with open(path, encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            sigma = "" if line == "-" else line
            try:
                check_bits(sigma)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
            strings.append(sigma)
    return normalize(strings)


def load_kurtz(path) -> KurtzTest:
    """Read a Kurtz test file: ``[level i]`` sections followed by generators."""
    levels: list[set[str]] = []
    current: set[str] | None = None
    with open(path, encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                header = line[1:-1].split()
                if len(header) != 2 or header[0] != "level":
                    raise ValueError(f"{path}:{lineno}: bad section {line!r}")
                try:
                    index = int(header[1])
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: bad level index") from exc
                if index != len(levels):
                    raise ValueError(
                        f"{path}:{lineno}: expected level {len(levels)}, got {index}"
                    )
                current = set()
                levels.append(current)
                continue
            if current is None:
                raise ValueError(f"{path}:{lineno}: generator before any [level i]")
            sigma = "" if line == "-" else line
            try:
                check_bits(sigma)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
            current.add(sigma)
    return KurtzTest(tuple(normalize(level) for level in levels))
