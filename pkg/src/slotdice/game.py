"""Board model: slot multipliers, placements, move legality, final scoring.

Free sets are bitmasks: bit (i - 1) set means slot i is still open. States are
immutable values; applying a move returns a new state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .dice import Pmf, Rational, expectation
from .errors import IllegalMoveError, IncompleteGameError, RangeError, ValidationError


@dataclass(frozen=True)
class SlotConfig:
    """Strictly increasing, positive score multipliers for slots 1..k.

    Strict increase is required, not just convenience: the polynomial
    strategy's exchange argument breaks down under ties, so equal multipliers
    are rejected here once and for all.
    """

    multipliers: tuple[Fraction, ...]

    def __init__(self, multipliers: Iterable[Rational]):
        mults = tuple(Fraction(m) for m in multipliers)
        if not mults:
            raise ValidationError("need at least one slot")
        if mults[0] <= 0:
            raise ValidationError(f"multipliers must be positive, got {mults[0]}")
        for a, b in zip(mults, mults[1:]):
            if b <= a:
                raise ValidationError(
                    f"multipliers must be strictly increasing, got {a} then {b}"
                )
        object.__setattr__(self, "multipliers", mults)

    @classmethod
    def standard(cls, slots: int = 10) -> "SlotConfig":
        """The classic board: multipliers 1..slots."""
        return cls(range(1, slots + 1))

    @property
    def slot_count(self) -> int:
        return len(self.multipliers)

    @property
    def full_mask(self) -> int:
        return (1 << self.slot_count) - 1

    def multiplier(self, slot: int) -> Fraction:
        """Multiplier of a 1-based slot index."""
        if not 1 <= slot <= self.slot_count:
            raise RangeError(f"slot {slot} outside 1..{self.slot_count}")
        return self.multipliers[slot - 1]

    def total(self) -> Fraction:
        return sum(self.multipliers, Fraction(0))


def slots_of_mask(mask: int) -> tuple[int, ...]:
    """1-based slot indices of the set bits, ascending."""
    slots = []
    slot = 1
    while mask:
        if mask & 1:
            slots.append(slot)
        mask >>= 1
        slot += 1
    return tuple(slots)


@dataclass(frozen=True)
class GameState:
    """A partially filled board for a fixed roll distribution and slot config."""

    pmf: Pmf
    config: SlotConfig
    placements: tuple[int | None, ...]

    @classmethod
    def initial(cls, pmf: Pmf, config: SlotConfig) -> "GameState":
        return cls(pmf, config, (None,) * config.slot_count)

    @property
    def rolls_played(self) -> int:
        return sum(1 for v in self.placements if v is not None)

    @property
    def is_complete(self) -> bool:
        return all(v is not None for v in self.placements)

    @property
    def free_mask(self) -> int:
        mask = 0
        for i, v in enumerate(self.placements):
            if v is None:
                mask |= 1 << i
        return mask

    @property
    def free_slots(self) -> tuple[int, ...]:
        return slots_of_mask(self.free_mask)

    def value_in(self, slot: int) -> int | None:
        if not 1 <= slot <= self.config.slot_count:
            raise RangeError(f"slot {slot} outside 1..{self.config.slot_count}")
        return self.placements[slot - 1]

    def banked_score(self) -> Fraction:
        """Sum of products over the slots filled so far."""
        return sum(
            (m * v for m, v in zip(self.config.multipliers, self.placements) if v is not None),
            Fraction(0),
        )


def score(state: GameState) -> Fraction:
    """Final score of a complete board: sum of multiplier times placed value."""
    if not state.is_complete:
        raise IncompleteGameError(
            f"board has {len(state.free_slots)} open slot(s); cannot score"
        )
    return state.banked_score()


def apply_move(state: GameState, slot: int, roll: int) -> GameState:
    """Place a roll into a free slot, returning the new state.

    The input state is never mutated.
    """
    if not 1 <= slot <= state.config.slot_count:
        raise RangeError(f"slot {slot} outside 1..{state.config.slot_count}")
    if not state.pmf.xmin <= roll <= state.pmf.xmax:
        raise RangeError(f"roll {roll} outside [{state.pmf.xmin}, {state.pmf.xmax}]")
    if state.placements[slot - 1] is not None:
        raise IllegalMoveError(f"slot {slot} is already filled")
    placements = list(state.placements)
    placements[slot - 1] = roll
    return GameState(state.pmf, state.config, tuple(placements))


def random_strategy_expected_score(pmf: Pmf, config: SlotConfig) -> Fraction:
    """Expected score of placing every roll uniformly at random.

    Each slot then receives an independent copy of the roll distribution, so
    the expectation factors into (sum of multipliers) * Exp(X). This is the
    baseline any real strategy has to beat.
    """
    return config.total() * expectation(pmf)
