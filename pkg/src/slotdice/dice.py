"""Exact roll distributions: dice convolution, expectations, conditional probabilities.

All probabilities are Fractions end to end; nothing in this module touches
floating point, so identities like "probabilities sum to 1" hold exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import RangeError, ValidationError

Rational = int | Fraction


@dataclass(frozen=True)
class DieSpec:
    """One die: a tuple of (face value, weight) pairs.

    Weights are relative and need not sum to 1; they are normalized when the
    die enters a convolution. A fair die is all-equal weights, a loaded die
    anything else.
    """

    faces: tuple[tuple[int, Fraction], ...]

    def __init__(self, faces: Iterable[tuple[int, Rational]]):
        normalized = tuple((int(v), Fraction(w)) for v, w in faces)
        if not normalized:
            raise ValidationError("a die needs at least one face")
        seen = set()
        for value, weight in normalized:
            if weight <= 0:
                raise ValidationError(f"face {value} has non-positive weight {weight}")
            if value in seen:
                raise ValidationError(f"duplicate face value {value}")
            seen.add(value)
        object.__setattr__(self, "faces", normalized)

    @classmethod
    def fair(cls, sides: int) -> "DieSpec":
        """Fair die with faces 1..sides."""
        if sides < 1:
            raise ValidationError(f"a die needs at least one side, got {sides}")
        return cls((v, 1) for v in range(1, sides + 1))

    @classmethod
    def from_weights(cls, weights: Mapping[int, Rational]) -> "DieSpec":
        """Die from a {face value: weight} mapping."""
        return cls(sorted(weights.items()))

    def distribution(self) -> dict[int, Fraction]:
        """Normalized {value: probability} for a single throw of this die."""
        total = sum(w for _, w in self.faces)
        return {v: w / total for v, w in self.faces}


@dataclass(frozen=True)
class Pmf:
    """Probability mass function of one roll on the integer support [xmin, xmax].

    ``probs[i]`` is Prob(X = xmin + i). The support is tight: both endpoints
    carry positive probability. Interior zeros (holes) are allowed for custom
    tables. Immutable; safe to share between threads.
    """

    xmin: int
    xmax: int
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.xmin > self.xmax:
            raise ValidationError(f"empty support: [{self.xmin}, {self.xmax}]")
        if len(self.probs) != self.xmax - self.xmin + 1:
            raise ValidationError("probability table does not match support bounds")
        if any(p < 0 for p in self.probs):
            raise ValidationError("negative probability in table")
        if self.probs[0] == 0 or self.probs[-1] == 0:
            raise ValidationError("support is not tight (zero mass at an endpoint)")
        total = sum(self.probs)
        if total != 1:
            raise ValidationError(f"probabilities sum to {total}, not 1")

    @classmethod
    def from_table(cls, table: Mapping[int, Rational]) -> "Pmf":
        """Pmf from a {value: probability} mapping; trims zero-mass endpoints."""
        entries = {int(v): Fraction(p) for v, p in table.items() if Fraction(p) != 0}
        if not entries:
            raise ValidationError("probability table has no positive entries")
        xmin, xmax = min(entries), max(entries)
        probs = tuple(entries.get(x, Fraction(0)) for x in range(xmin, xmax + 1))
        return cls(xmin, xmax, probs)

    def prob(self, x: int) -> Fraction:
        """Prob(X = x); raises RangeError outside [xmin, xmax]."""
        if not self.xmin <= x <= self.xmax:
            raise RangeError(f"value {x} outside support [{self.xmin}, {self.xmax}]")
        return self.probs[x - self.xmin]

    def values(self) -> range:
        """All integers in the support, including any interior holes."""
        return range(self.xmin, self.xmax + 1)

    def as_dict(self) -> dict[int, Fraction]:
        return {x: p for x, p in zip(self.values(), self.probs)}

    def support_size(self) -> int:
        """Number of values with positive probability."""
        return sum(1 for p in self.probs if p > 0)


def pmf_from_dice(dice: Sequence[DieSpec]) -> Pmf:
    """Exact distribution of the sum of independent dice.

    Convolves the normalized per-die distributions; the result is independent
    of the order of the dice.
    """
    if not dice:
        raise ValidationError("need at least one die")
    acc: dict[int, Fraction] = {0: Fraction(1)}
    for die in dice:
        dist = die.distribution()
        nxt: dict[int, Fraction] = {}
        for total, p in acc.items():
            for value, q in dist.items():
                key = total + value
                nxt[key] = nxt.get(key, Fraction(0)) + p * q
        acc = nxt
    return Pmf.from_table(acc)


def expectation(pmf: Pmf) -> Fraction:
    """Exact expected value of one roll."""
    return sum((x * p for x, p in zip(pmf.values(), pmf.probs)), Fraction(0))


def conditional_at_most(pmf: Pmf, y: int) -> Fraction:
    """Prob(X = y | X <= y), exact.

    The denominator is positive for every y in the support because the
    support is tight at xmin.
    """
    if not pmf.xmin <= y <= pmf.xmax:
        raise RangeError(f"value {y} outside support [{pmf.xmin}, {pmf.xmax}]")
    mass_at_most = sum(pmf.probs[: y - pmf.xmin + 1])
    return pmf.prob(y) / mass_at_most


def iid_all_equal_probability(pmf: Pmf, x: int, n: int) -> Fraction:
    """Probability that n independent rolls all equal x: Prob(X=x)**n."""
    if n < 0:
        raise ValidationError(f"roll count must be non-negative, got {n}")
    return pmf.prob(x) ** n
