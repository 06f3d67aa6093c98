"""Subset DP over free-slot sets: optimal expected scores and move queries.

The table maps each set S of still-open slots to the best expected score
obtainable by filling exactly those slots. Entries are exact rationals; the
build runs on big integers over a common denominator (the per-cardinality
denominators are all equal, so comparisons reduce to integer comparisons)
and converts to Fractions once at the end.
"""

from __future__ import annotations

import hashlib
import pickle
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path

from .dice import Pmf
from .errors import CapacityError, NoMovesError, RangeError, ValidationError
from .game import SlotConfig, slots_of_mask
from .gamespec import game_digest
from .rendering import decimal_str, rational_str

DEFAULT_MAX_SLOTS = 30


@dataclass(frozen=True)
class ExactTable:
    """Optimal expected score for every subset of slots left to fill.

    ``values[mask]`` is the expected score of optimally filling exactly the
    slots in ``mask`` (bit i-1 = slot i). Immutable; queries are read-only
    and thread-safe.
    """

    pmf: Pmf
    config: SlotConfig
    values: tuple[Fraction, ...]
    # Scaled-integer mirror of `values` for fast exact comparisons:
    # _scaled[mask] == values[mask] * _prob_denom**popcount(mask) * _mult_scale.
    _scaled: tuple[int, ...]
    _prob_denom: int
    _mult_scale: int

    def value(self, mask: int) -> Fraction:
        if not 0 <= mask <= self.config.full_mask:
            raise RangeError(f"mask {mask:#x} outside table of {self.config.slot_count} slots")
        return self.values[mask]

    @property
    def full_value(self) -> Fraction:
        """Best expected score for the complete game."""
        return self.values[self.config.full_mask]


@dataclass(frozen=True)
class ClosestCall:
    """Witness of the smallest positive gap between best and runner-up moves."""

    free_mask: int
    roll: int
    best_slot: int
    runner_up_slot: int
    gap: Fraction

    @property
    def free_slots(self) -> tuple[int, ...]:
        return slots_of_mask(self.free_mask)


def build_exact_table(
    pmf: Pmf, config: SlotConfig, max_slots: int = DEFAULT_MAX_SLOTS
) -> ExactTable:
    """Fill the table bottom-up by cardinality of the free set.

    The empty set scores 0; each larger set averages, over the next roll, the
    best of "place it in slot i, then play the rest optimally".
    """
    k = config.slot_count
    if k > max_slots:
        raise CapacityError(
            f"{k} slots need a table of 2^{k} = {2**k} entries "
            f"(limit 2^{max_slots}); refusing to build"
        )

    prob_denom = lcm(*(p.denominator for p in pmf.probs))
    rolls = [
        (x, p.numerator * (prob_denom // p.denominator))
        for x, p in zip(pmf.values(), pmf.probs)
        if p > 0
    ]
    mult_scale = lcm(*(m.denominator for m in config.multipliers))
    scaled_mults = [0] + [int(m * mult_scale) for m in config.multipliers]

    size = 1 << k
    scaled = [0] * size
    slot_bits = [(i, 1 << (i - 1)) for i in range(1, k + 1)]
    denom_pow = 1  # prob_denom ** (popcount - 1) for the stratum being filled
    for cardinality in range(1, k + 1):
        for mask in range(size):
            if mask.bit_count() != cardinality:
                continue
            acc = 0
            for x, weight in rolls:
                best = None
                for slot, bit in slot_bits:
                    if mask & bit:
                        n = scaled_mults[slot] * x * denom_pow + scaled[mask ^ bit]
                        if best is None or n > best:
                            best = n
                acc += weight * best
            scaled[mask] = acc
        denom_pow *= prob_denom

    values = tuple(
        Fraction(scaled[mask], prob_denom ** mask.bit_count() * mult_scale)
        for mask in range(size)
    )
    return ExactTable(pmf, config, values, tuple(scaled), prob_denom, mult_scale)


def _check_query(table: ExactTable, free: int, roll: int) -> None:
    if not 0 <= free <= table.config.full_mask:
        raise RangeError(f"free mask {free:#x} outside table")
    if free == 0:
        raise NoMovesError("no free slots")
    if not table.pmf.xmin <= roll <= table.pmf.xmax:
        raise RangeError(f"roll {roll} outside [{table.pmf.xmin}, {table.pmf.xmax}]")


def best_move(table: ExactTable, free: int, roll: int) -> int:
    """Slot in `free` maximizing multiplier*roll + value(free - slot).

    Ties go to the smallest slot index, so the answer is deterministic.
    """
    _check_query(table, free, roll)
    denom_pow = table._prob_denom ** (free.bit_count() - 1)
    scaled = table._scaled
    mults = table.config.multipliers
    best_slot = 0
    best_n = None
    for slot in slots_of_mask(free):
        a = int(mults[slot - 1] * table._mult_scale)
        n = a * roll * denom_pow + scaled[free ^ (1 << (slot - 1))]
        if best_n is None or n > best_n:
            best_n, best_slot = n, slot
    return best_slot


def move_evaluations(table: ExactTable, free: int, roll: int) -> list[tuple[int, Fraction]]:
    """(slot, expected final score from here) for every free slot.

    Sorted by value descending, slot ascending on ties; the first entry is
    the best_move answer.
    """
    _check_query(table, free, roll)
    entries = [
        (slot, table.config.multipliers[slot - 1] * roll + table.values[free ^ (1 << (slot - 1))])
        for slot in slots_of_mask(free)
    ]
    entries.sort(key=lambda e: (-e[1], e[0]))
    return entries


def closest_call(table: ExactTable, scope: str = "first-move") -> ClosestCall | None:
    """Find the minimal positive gap between the best and runner-up moves.

    scope "first-move" looks only at the empty board; "full-game" scans every
    free set with at least two open slots. Exact ties (gap 0) never count.
    Returns None for single-slot games or when every state is an exact tie.
    """
    if scope not in ("first-move", "full-game"):
        raise ValidationError(f"unknown scope {scope!r}")
    k = table.config.slot_count
    if k < 2:
        return None

    full = table.config.full_mask
    masks = [full] if scope == "first-move" else [m for m in range(3, full + 1) if m.bit_count() >= 2]
    rolls = [x for x, p in zip(table.pmf.values(), table.pmf.probs) if p > 0]
    scaled = table._scaled
    mult_scale = table._mult_scale
    prob_denom = table._prob_denom
    scaled_mults = [0] + [int(m * mult_scale) for m in table.config.multipliers]

    best_witness: ClosestCall | None = None
    for mask in masks:
        denom_pow = prob_denom ** (mask.bit_count() - 1)
        denom = denom_pow * mult_scale
        slots = slots_of_mask(mask)
        for roll in rolls:
            top_n = second_n = None
            top_slot = second_slot = 0
            for slot in slots:
                n = scaled_mults[slot] * roll * denom_pow + scaled[mask ^ (1 << (slot - 1))]
                if top_n is None or n > top_n:
                    second_n, second_slot = top_n, top_slot
                    top_n, top_slot = n, slot
                elif second_n is None or n > second_n:
                    second_n, second_slot = n, slot
            if top_n == second_n:
                continue
            gap = Fraction(top_n - second_n, denom)
            if best_witness is None or gap < best_witness.gap:
                best_witness = ClosestCall(mask, roll, top_slot, second_slot, gap)
    return best_witness


def export_text(table: ExactTable, precision: int = 5) -> str:
    """Dump every entry as "mask<TAB>slots<TAB>exact<TAB>decimal" lines."""
    lines = ["mask\tslots\texact\tvalue"]
    for mask, value in enumerate(table.values):
        slots = ",".join(str(s) for s in slots_of_mask(mask)) or "-"
        lines.append(f"{mask}\t{slots}\t{rational_str(value)}\t{decimal_str(value, precision)}")
    return "\n".join(lines) + "\n"


_CACHE_MAGIC = b"SLOTDICE-EXACT-1\n"


def save_cache(table: ExactTable, path: str | Path) -> None:
    """Write a compact binary cache keyed by the (pmf, multipliers) digest."""
    digest = bytes.fromhex(game_digest(table.pmf, table.config))
    payload = pickle.dumps(
        [(v.numerator, v.denominator) for v in table.values], protocol=4
    )
    body = digest + hashlib.sha256(payload).digest() + payload
    Path(path).write_bytes(_CACHE_MAGIC + body)


def load_cache(path: str | Path, pmf: Pmf, config: SlotConfig) -> ExactTable:
    """Reload a cached table, verifying it belongs to this game spec."""
    blob = Path(path).read_bytes()
    if not blob.startswith(_CACHE_MAGIC):
        raise ValidationError(f"{path}: not an exact-table cache")
    body = blob[len(_CACHE_MAGIC):]
    digest, checksum, payload = body[:32], body[32:64], body[64:]
    if digest != bytes.fromhex(game_digest(pmf, config)):
        raise ValidationError(f"{path}: cache was built for a different game spec")
    if hashlib.sha256(payload).digest() != checksum:
        raise ValidationError(f"{path}: cache payload corrupted")
    pairs = pickle.loads(payload)
    if len(pairs) != 1 << config.slot_count:
        raise ValidationError(f"{path}: cache has {len(pairs)} entries")
    values = tuple(Fraction(n, d) for n, d in pairs)

    prob_denom = lcm(*(p.denominator for p in pmf.probs))
    mult_scale = lcm(*(m.denominator for m in config.multipliers))
    scaled = tuple(
        int(v * prob_denom ** mask.bit_count() * mult_scale)
        for mask, v in enumerate(values)
    )
    return ExactTable(pmf, config, values, scaled, prob_denom, mult_scale)
