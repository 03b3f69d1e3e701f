"""String/number bijections, pairing, interval families and the dyadic budget.

Binary strings are plain ``str`` objects over the characters ``"0"`` and
``"1"``; the empty string is a valid string.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


def check_bits(sigma: str) -> str:
    """Reject anything that is not a word over {0,1}."""
    if any(c not in "01" for c in sigma):
        raise ValueError(f"not a binary string: {sigma!r}")
    return sigma


def num_of(sigma: str) -> int:
    """Rank of ``sigma`` in length-lexicographic order (shorter first).

    Satisfies 2^|sigma| - 1 <= num_of(sigma) <= 2^(|sigma|+1) - 2.
    """
    check_bits(sigma)
    offset = int(sigma, 2) if sigma else 0
    return (1 << len(sigma)) - 1 + offset


def str_of(n: int) -> str:
    """Inverse of :func:`num_of`."""
    if n < 0:
        raise ValueError("rank must be a natural number")
    length = (n + 1).bit_length() - 1
    offset = n - ((1 << length) - 1)
    return format(offset, "b").zfill(length) if length else ""


def pair(a: int, b: int) -> int:
    """Injective pairing via the rank of ``1^|str(a)| 0 str(a) str(b)``."""
    sa, sb = str_of(a), str_of(b)
    return num_of("1" * len(sa) + "0" + sa + sb)


def s_index(e: int, n: int) -> int:
    """Even index 2*pair(e, n); bounded by 8(e+1)^2(n+1)."""
    return 2 * pair(e, n)


def parity(x: int) -> int:
    return x % 2


class Family(Enum):
    """The three interval partition families used throughout."""

    LOGPART = "logpart"
    POW2 = "pow2"
    POW3 = "pow3"


@dataclass(frozen=True)
class IndexInterval:
    family: Family
    index: int
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def members(self) -> range:
        return range(self.lo, self.hi + 1)


def logpart_size(m: int) -> int:
    """floor(2 + log2(m+1)), the size of the m-th LOGPART interval."""
    if m < 0:
        raise ValueError("index must be a natural number")
    return (m + 1).bit_length() + 1


def _logpart_lo(m: int) -> int:
    # lo(m) = sum_{j<m} logpart_size(j) = 2m + sum_{t=1}^{m} floor(log2 t),
    # and the inner sum has the closed form (m+1)k - 2^(k+1) + 2 with
    # k = floor(log2 m).
    if m == 0:
        return 0
    k = m.bit_length() - 1
    return 2 * m + (m + 1) * k - (1 << (k + 1)) + 2


def interval(family: Family, m: int) -> IndexInterval:
    """The m-th interval of the given family."""
    if m < 0:
        raise ValueError("index must be a natural number")
    if family is Family.LOGPART:
        lo = _logpart_lo(m)
        return IndexInterval(family, m, lo, lo + logpart_size(m) - 1)
    if family is Family.POW2:
        if m == 0:
            return IndexInterval(family, 0, 0, 1)
        return IndexInterval(family, m, (1 << m) + 1, 1 << (m + 1))
    if family is Family.POW3:
        if m == 0:
            return IndexInterval(family, 0, 0, 2)
        return IndexInterval(family, m, 3**m, 3 ** (m + 1) - 1)
    raise ValueError(f"unknown family: {family!r}")


@dataclass(frozen=True)
class BudgetSequence:
    """Prefix r_0..r_k of the dyadic budget with its exact remainder.

    Every term is a negative power of 2 and
    sum_i (i+1)*terms[i] + remainder == 1/2 exactly, with remainder > 0.
    """

    terms: tuple[Fraction, ...]
    remainder: Fraction

    def weighted_partial_sum(self) -> Fraction:
        return sum(((i + 1) * r for i, r in enumerate(self.terms)), Fraction(0))


def _largest_dyadic_below(x: Fraction) -> Fraction:
    """Largest power of two that is <= x (x must be positive)."""
    if x <= 0:
        raise ValueError("x must be positive")
    e = x.numerator.bit_length() - x.denominator.bit_length()
    while Fraction(2) ** e > x:
        e -= 1
    while Fraction(2) ** (e + 1) <= x:
        e += 1
    return Fraction(2) ** e


def budget_sequence(k: int) -> BudgetSequence:
    """Greedy prefix r_0..r_k of powers of two with weighted sum below 1/2.

    r_i is the largest power of two with (i+1)*r_i <= remainder_i/2, which
    forces remainder_k <= (3/4)^k / 2 while keeping the remainder positive.
    """
    if k < 0:
        raise ValueError("k must be a natural number")
    remainder = Fraction(1, 2)
    terms: list[Fraction] = []
    for i in range(k + 1):
        r = _largest_dyadic_below(remainder / (2 * (i + 1)))
        terms.append(r)
        remainder -= (i + 1) * r
    return BudgetSequence(tuple(terms), remainder)
