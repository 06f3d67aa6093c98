"""The all-knowing upper bound: sees every roll in advance, sorts, and places.

Its expected score comes from a small DP over (current value y, free slots l):
condition on how many of the l pending rolls (all known to be <= y) are exactly
y; those occupy the most expensive of the l cheapest slots, the rest recurse
on y-1. An enumeration oracle over all roll multisets cross-checks the DP
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from .dice import Pmf, conditional_at_most
from .errors import CapacityError, RangeError, ValidationError
from .game import GameState, SlotConfig
from .rendering import decimal_str, rational_str

DEFAULT_MAX_MULTISETS = 5_000_000


def multiplier_range_sum(config: SlotConfig, i: int, j: int) -> Fraction:
    """Sum of the multipliers of slots i..j; empty when i == j + 1.

    For multipliers 1..k this is the triangular-number difference
    ((j+1)j - i(i-1)) / 2.
    """
    if i < 1 or j > config.slot_count or i > j + 1:
        raise RangeError(
            f"range {i}..{j} invalid for {config.slot_count} slots"
        )
    return sum(config.multipliers[i - 1 : j], Fraction(0))


@dataclass(frozen=True)
class OmniscientTable:
    """Partial scores Q[y, l]: l rolls <= y still to place on the l cheapest slots."""

    pmf: Pmf
    config: SlotConfig
    values: tuple[tuple[Fraction, ...], ...]  # indexed [y - xmin + 1][l]

    def value(self, y: int, l: int) -> Fraction:
        if not self.pmf.xmin - 1 <= y <= self.pmf.xmax:
            raise RangeError(f"y={y} outside [{self.pmf.xmin - 1}, {self.pmf.xmax}]")
        if not 0 <= l <= self.config.slot_count:
            raise RangeError(f"l={l} outside 0..{self.config.slot_count}")
        return self.values[y - self.pmf.xmin + 1][l]

    @property
    def expected_score(self) -> Fraction:
        return self.values[-1][self.config.slot_count]


def build_omniscient(pmf: Pmf, config: SlotConfig) -> OmniscientTable:
    """Fill Q bottom-up in y, with binomial weights on the count of y-valued rolls.

    Values with zero probability get p_y = 0 and the stage collapses to the
    row below, so pmfs with interior holes work unchanged.
    """
    slots = config.slot_count
    prefix = [Fraction(0)]
    for m in config.multipliers:
        prefix.append(prefix[-1] + m)  # prefix[j] = sum of multipliers 1..j

    rows: list[tuple[Fraction, ...]] = [tuple(Fraction(0) for _ in range(slots + 1))]
    for y in pmf.values():
        p_y = conditional_at_most(pmf, y)
        below = rows[-1]
        row = [Fraction(0)]
        for l in range(1, slots + 1):
            total = Fraction(0)
            for c in range(l + 1):
                weight = comb(l, c) * p_y**c * (1 - p_y) ** (l - c)
                if weight == 0:
                    continue
                tie_score = y * (prefix[l] - prefix[l - c])
                total += weight * (tie_score + below[l - c])
            row.append(total)
        rows.append(tuple(row))
    return OmniscientTable(pmf, config, tuple(rows))


def omniscient_play(pmf: Pmf, config: SlotConfig, rolls: list[int]) -> GameState:
    """Play a full game knowing all rolls: sorted rolls onto sorted multipliers.

    By the rearrangement inequality no assignment scores higher.
    """
    if len(rolls) != config.slot_count:
        raise ValidationError(
            f"need exactly {config.slot_count} rolls, got {len(rolls)}"
        )
    for roll in rolls:
        if not pmf.xmin <= roll <= pmf.xmax:
            raise RangeError(f"roll {roll} outside [{pmf.xmin}, {pmf.xmax}]")
    return GameState(pmf, config, tuple(sorted(rolls)))


def omniscient_bruteforce(
    pmf: Pmf, config: SlotConfig, max_multisets: int = DEFAULT_MAX_MULTISETS
) -> Fraction:
    """Exact expected omniscient score by enumerating every roll multiset.

    Each multiset is weighted by its multinomial probability and scored by
    the sorted assignment. Independent of the Q-table recurrence; used to
    cross-check it. Integer arithmetic throughout, one division at the end.
    """
    slots = config.slot_count
    values = [x for x, p in zip(pmf.values(), pmf.probs) if p > 0]
    count = comb(slots + len(values) - 1, slots)
    if count > max_multisets:
        raise CapacityError(
            f"{count} roll multisets exceed the budget of {max_multisets}"
        )

    prob_denom = lcm(*(p.denominator for p in pmf.probs))
    weights = {
        x: p.numerator * (prob_denom // p.denominator)
        for x, p in zip(pmf.values(), pmf.probs)
        if p > 0
    }
    mult_scale = lcm(*(m.denominator for m in config.multipliers))
    prefix = [0]
    for m in config.multipliers:
        prefix.append(prefix[-1] + int(m * mult_scale))
    binom = [[comb(n, r) for r in range(slots + 1)] for n in range(slots + 1)]

    # weight accumulates multinomial(c_1..c_m) * prod(w_v ** c_v) through the
    # chained binomials C(open, c); summing weights over all multisets gives
    # prob_denom ** slots exactly.
    total = 0

    def walk(idx: int, open_slots: int, weight: int, partial: int) -> None:
        nonlocal total
        value = values[idx]
        w = weights[value]
        filled = slots - open_slots
        if idx == len(values) - 1:
            seg = value * (prefix[slots] - prefix[filled])
            total += weight * w**open_slots * (partial + seg)
            return
        choose = binom[open_slots]
        wpow = 1
        for c in range(open_slots + 1):
            seg = value * (prefix[filled + c] - prefix[filled])
            walk(idx + 1, open_slots - c, weight * choose[c] * wpow, partial + seg)
            wpow *= w

    walk(0, slots, 1, 0)
    return Fraction(total, prob_denom**slots * mult_scale)


def export_text(table: OmniscientTable, precision: int = 5) -> str:
    """Grid dump: one line per y, one cell per free-slot count l."""
    slots = table.config.slot_count
    lines = ["y\t" + "\t".join(f"l={l}" for l in range(slots + 1))]
    for offset, row in enumerate(table.values):
        y = table.pmf.xmin - 1 + offset
        cells = [f"{decimal_str(v, precision)} ({rational_str(v)})" for v in row]
        lines.append(f"{y}\t" + "\t".join(cells))
    return "\n".join(lines) + "\n"
