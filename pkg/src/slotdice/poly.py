"""Rank-threshold strategy: triangular table of per-rank expected placed values.

Row j holds, for a game with j free slots played optimally, the expected
value that ends up on the i-th cheapest of those slots. The rows double as
decision thresholds: a roll goes to the rank it sandwiches between. Slot
multipliers never enter the decision, only their relative order does, so one
table plays every strictly-increasing-multiplier game of its size.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .dice import Pmf, expectation
from .errors import RangeError, ValidationError
from .game import SlotConfig
from .rendering import decimal_str, rational_str


@dataclass(frozen=True)
class ExpectationTable:
    """Triangular table: rows indexed 1..k, row j has entries for ranks 1..j.

    Each row is non-decreasing. Immutable after build; reads are thread-safe.
    """

    pmf: Pmf
    k: int
    rows: tuple[tuple[Fraction, ...], ...]

    def row(self, j: int) -> tuple[Fraction, ...]:
        if not 1 <= j <= self.k:
            raise RangeError(f"row {j} outside 1..{self.k}")
        return self.rows[j - 1]


def build_expectation_table(pmf: Pmf, k: int) -> ExpectationTable:
    """Build rows 1..k bottom-up.

    Row 1 is just Exp(X). Row j follows from row j-1: the next roll lands at
    the rank it sandwiches into among j slots (decided against row j-1, which
    is the table a player consults when j slots are free), pushing the ranks
    above it up by one.
    """
    if k < 1:
        raise ValidationError(f"need at least one slot, got {k}")
    rolls = [(x, p) for x, p in zip(pmf.values(), pmf.probs) if p > 0]
    rows: list[tuple[Fraction, ...]] = [(expectation(pmf),)]
    for j in range(2, k + 1):
        prev = rows[-1]
        acc = [Fraction(0)] * j
        for x, p in rolls:
            insert_at = _sandwich_rank(prev, x)  # 1-based rank among j slots
            for i in range(insert_at - 1):
                acc[i] += p * prev[i]
            acc[insert_at - 1] += p * x
            for i in range(insert_at, j):
                acc[i] += p * prev[i - 1]
        rows.append(tuple(acc))
    return ExpectationTable(pmf, k, tuple(rows))


def _sandwich_rank(row: tuple[Fraction, ...], roll: int) -> int:
    """Smallest 1-based i with row[i-2] <= roll <= row[i-1], sentinels at +-inf.

    The row is sorted, so this is the leftmost insertion point. Index may be
    len(row) + 1 (above every threshold).
    """
    return bisect_left(row, roll) + 1


def choose_free_rank(table: ExpectationTable, free_count: int, roll: int) -> int:
    """Rank (1-based, ascending multiplier) to place `roll` with `free_count` open slots.

    Uses the row one below the free count; with a single free slot there is
    nothing to consult and the rank is 1. On boundary ties the smallest
    qualifying rank wins.
    """
    if not 1 <= free_count <= table.k:
        raise RangeError(f"free count {free_count} outside 1..{table.k}")
    if not table.pmf.xmin <= roll <= table.pmf.xmax:
        raise RangeError(f"roll {roll} outside [{table.pmf.xmin}, {table.pmf.xmax}]")
    if free_count == 1:
        return 1
    return _sandwich_rank(table.rows[free_count - 2], roll)


def poly_strategy_expected_score(table: ExpectationTable, config: SlotConfig) -> Fraction:
    """Expected full-game score: dot product of multipliers with the top row."""
    if config.slot_count != table.k:
        raise ValidationError(
            f"table built for {table.k} slots, config has {config.slot_count}"
        )
    top = table.rows[table.k - 1]
    return sum((m * e for m, e in zip(config.multipliers, top)), Fraction(0))


def export_text(table: ExpectationTable, precision: int = 3) -> str:
    """Triangular dump, one row per line, cells as "decimal (exact)"."""
    lines = []
    for j in range(table.k, 0, -1):
        cells = [
            f"{decimal_str(v, precision)} ({rational_str(v)})" for v in table.rows[j - 1]
        ]
        lines.append(f"j={j}\t" + "\t".join(cells))
    return "\n".join(lines) + "\n"
