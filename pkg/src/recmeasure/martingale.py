"""Exact martingales on binary strings: evaluation, validation, combinators.

A martingale assigns a nonnegative exact capital to every binary string up
to a finite depth, subject to the fairness equation
2*M(sigma) == M(sigma+"0") + M(sigma+"1").
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .codec import check_bits

# Capital banked by the savings transform in units of 1; the working part is
# kept strictly below this cap, so capital along a path never drops by more
# than SAVINGS_DROP_BOUND below any earlier value.
SAVINGS_DROP_BOUND = 2


def all_strings(length: int) -> Iterable[str]:
    """All binary strings of exactly the given length, lexicographically."""
    return (format(i, "b").zfill(length) if length else "" for i in range(1 << length))


def strings_up_to(depth: int) -> Iterable[str]:
    for length in range(depth + 1):
        yield from all_strings(length)


class Martingale:
    """Base class: a capital function defined on strings of length <= depth."""

    depth: int

    def value(self, sigma: str) -> Fraction:
        raise NotImplementedError

    def _check_query(self, sigma: str) -> str:
        check_bits(sigma)
        if len(sigma) > self.depth:
            raise ValueError(
                f"query {sigma!r} exceeds martingale depth {self.depth}"
            )
        return sigma


class TableMartingale(Martingale):
    """Martingale given by an explicit table on all strings up to depth."""

    def __init__(self, depth: int, table: dict[str, Fraction]):
        if depth < 0:
            raise ValueError("depth must be a natural number")
        self.depth = depth
        self.table = {s: Fraction(v) for s, v in table.items()}
        for sigma in strings_up_to(depth):
            if sigma not in self.table:
                raise ValueError(f"table is missing the string {sigma!r}")

    def value(self, sigma: str) -> Fraction:
        self._check_query(sigma)
        return self.table[sigma]


class StrategyMartingale(Martingale):
    """Martingale induced by a betting rule.

    ``rule(sigma)`` returns a stake fraction in [0,1] and a predicted next
    bit; capital multiplies by (1+stake) when the prediction is correct and
    by (1-stake) otherwise, which preserves the fairness equation.
    """

    def __init__(
        self,
        depth: int,
        initial: Fraction,
        rule: Callable[[str], tuple[Fraction, int]],
    ):
        if depth < 0:
            raise ValueError("depth must be a natural number")
        if initial < 0:
            raise ValueError("initial capital must be nonnegative")
        self.depth = depth
        self.initial = Fraction(initial)
        self.rule = rule
        self._cache: dict[str, Fraction] = {"": self.initial}

    def value(self, sigma: str) -> Fraction:
        self._check_query(sigma)
        cached = self._cache.get(sigma)
        if cached is not None:
            return cached
        parent = self.value(sigma[:-1])
        stake, predicted = self.rule(sigma[:-1])
        if not (0 <= stake <= 1):
            raise ValueError(f"stake fraction {stake} outside [0,1]")
        if predicted not in (0, 1):
            raise ValueError(f"predicted bit {predicted!r} not a bit")
        factor = 1 + stake if int(sigma[-1]) == predicted else 1 - stake
        result = parent * factor
        self._cache[sigma] = result
        return result


class SumMartingale(Martingale):
    """Exact weighted sum of martingales of a common depth."""

    def __init__(self, members: Sequence[tuple[Fraction, Martingale]]):
        if not members:
            raise ValueError("empty sum")
        depths = {m.depth for _, m in members}
        if len(depths) != 1:
            raise ValueError(f"mismatched depths: {sorted(depths)}")
        for w, _ in members:
            if w < 0:
                raise ValueError("weights must be nonnegative")
        self.members = [(Fraction(w), m) for w, m in members]
        self.depth = depths.pop()

    def value(self, sigma: str) -> Fraction:
        self._check_query(sigma)
        return sum((w * m.value(sigma) for w, m in self.members), Fraction(0))


class SavingsMartingale(Martingale):
    """Savings transform of a martingale.

    Splits capital into a banked part (nondecreasing along paths) and a
    working part that mirrors the underlying martingale proportionally;
    whenever the working part reaches 2, whole units move to the bank.
    """

    def __init__(self, base: Martingale):
        if base.value("") > 1:
            raise ValueError("rescale the input so that its initial capital is <= 1")
        self.base = base
        self.depth = base.depth
        self._state: dict[str, tuple[Fraction, Fraction]] = {
            "": (Fraction(0), base.value(""))
        }

    def saved_active(self, sigma: str) -> tuple[Fraction, Fraction]:
        self._check_query(sigma)
        cached = self._state.get(sigma)
        if cached is not None:
            return cached
        saved, active = self.saved_active(sigma[:-1])
        parent_value = self.base.value(sigma[:-1])
        if parent_value == 0:
            # the base is identically 0 below here, so nothing is at stake
            new_active = active
        else:
            new_active = active * self.base.value(sigma) / parent_value
        while new_active >= SAVINGS_DROP_BOUND:
            new_active -= 1
            saved += 1
        self._state[sigma] = (saved, new_active)
        return saved, new_active

    def value(self, sigma: str) -> Fraction:
        saved, active = self.saved_active(sigma)
        return saved + active


@dataclass(frozen=True)
class BoundFunction:
    """Strictly increasing checkpoints f(0)..f(k)."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("bound function must be strictly increasing")
        if self.values and self.values[0] < 0:
            raise ValueError("bound function values must be natural numbers")

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, n: int) -> int:
        return self.values[n]


def validate(m: Martingale, depth: int) -> list[str]:
    """All fairness/nonnegativity violations of ``m`` up to ``depth``.

    Empty result iff ``m`` is a martingale to that depth.
    """
    if depth > m.depth:
        raise ValueError(f"requested depth {depth} exceeds martingale depth {m.depth}")
    violations = []
    for sigma in strings_up_to(depth):
        v = m.value(sigma)
        if v < 0:
            violations.append(f"negative value {v} at {sigma or 'λ'!r}")
        if len(sigma) < depth:
            left, right = m.value(sigma + "0"), m.value(sigma + "1")
            if 2 * v != left + right:
                violations.append(
                    f"averaging violated at {sigma or 'λ'!r}: "
                    f"2*{v} != {left} + {right}"
                )
    return violations


def evaluate(m: Martingale, sigma: str) -> Fraction:
    return m.value(sigma)


def capital_trace(m: Martingale, path: str) -> list[Fraction]:
    """Capitals along every prefix of ``path``, including the empty prefix."""
    m._check_query(path)
    return [m.value(path[:n]) for n in range(len(path) + 1)]


def combine_sum(members: Sequence[tuple[Fraction, Martingale]]) -> SumMartingale:
    return SumMartingale(members)


def savings_transform(m: Martingale) -> SavingsMartingale:
    return SavingsMartingale(m)


def success_at(m: Martingale, path: str, threshold: Fraction) -> Optional[int]:
    """Least prefix length at which capital reaches the threshold, if any."""
    for n, capital in enumerate(capital_trace(m, path)):
        if capital >= threshold:
            return n
    return None


def schnorr_hits(m: Martingale, f: BoundFunction, path: str) -> list[int]:
    """All n with capital strictly above n at the checkpoint f(n)+1."""
    hits = []
    for n in range(len(f)):
        if f(n) + 1 > len(path):
            break
        if m.value(path[: f(n) + 1]) > n:
            hits.append(n)
    return hits


def load_table(path) -> TableMartingale:
    """Read a martingale table file: one ``<bits|-> <num>/<den>`` per line."""
    table: dict[str, Fraction] = {}
    with open(path, encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected '<string> <value>'")
            sigma = "" if parts[0] == "-" else parts[0]
            check_bits(sigma)
            try:
                value = Fraction(parts[1])
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"{path}:{lineno}: bad rational {parts[1]!r}") from exc
            if sigma in table:
                raise ValueError(f"{path}:{lineno}: duplicate entry for {parts[0]!r}")
            table[sigma] = value
    if not table:
        raise ValueError(f"{path}: empty martingale table")
    depth = max(len(s) for s in table)
    return TableMartingale(depth, table)


def dump_table(m: Martingale, depth: int | None = None) -> str:
    depth = m.depth if depth is None else depth
    lines = [
        f"{sigma or '-'} {m.value(sigma)}" for sigma in strings_up_to(depth)
    ]
    return "\n".join(lines) + "\n"
