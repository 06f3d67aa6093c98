"""Seeded Monte Carlo evaluation of strategies.

Determinism contract: every roll comes from a per-game substream derived only
from (seed, game index, channel), so results are bit-identical no matter how
games are batched or parallelized. Sampling is inverse-CDF on the exact
integer cumulative table over the pmf's common denominator — an exactly
uniform integer draw, no floating point anywhere near the probabilities.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .dice import Pmf
from .errors import ValidationError
from .exact import ExactTable, best_move
from .game import SlotConfig, slots_of_mask
from .poly import ExpectationTable, choose_free_rank
from .rendering import decimal_str

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    """splitmix64 finalizer: the bit mixer behind the substream derivation."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_substream(seed: int, game_index: int, channel: int = 0) -> int:
    """Deterministic 64-bit seed for one game's stream.

    Mixes seed, then game index, then channel, each through splitmix64 with a
    golden-ratio offset; order-dependent, so (game, channel) never collides
    with (channel, game).
    """
    z = _mix64(seed)
    z = _mix64(z + (game_index + 1) * _GOLDEN)
    z = _mix64(z + (channel + 1) * _GOLDEN)
    return z


class RollSampler:
    """Exact inverse-CDF sampler over a pmf's integer weight table."""

    def __init__(self, pmf: Pmf):
        denom = lcm(*(p.denominator for p in pmf.probs))
        values = []
        cumulative = []
        acc = 0
        for x, p in zip(pmf.values(), pmf.probs):
            if p > 0:
                acc += p.numerator * (denom // p.denominator)
                values.append(x)
                cumulative.append(acc)
        self.denom = denom
        self.values = values
        self.cumulative = cumulative

    def sample(self, rng: random.Random) -> int:
        u = rng.randrange(self.denom)
        return self.values[bisect_right(self.cumulative, u)]


# ── Strategies ──────────────────────────────────────────────────────────────

class Strategy(ABC):
    """A placement policy: (free set, roll) -> slot.

    begin_game runs once per game; the omniscient variant reads the full roll
    vector there, the random variant grabs its dedicated placement stream.
    Strategies that draw randomness must set uses_placement_stream so the
    simulator derives their per-game stream (skipped otherwise, and rng is
    None in begin_game).
    """

    name: str = "strategy"
    uses_placement_stream: bool = False

    def begin_game(self, rolls: Sequence[int], rng: random.Random | None) -> None:
        pass

    @abstractmethod
    def choose_slot(self, free_mask: int, roll: int) -> int:
        ...


class RandomStrategy(Strategy):
    """Uniform placement into a random free slot (the baseline)."""

    name = "random"
    uses_placement_stream = True

    def __init__(self):
        self._rng: random.Random | None = None
        self._slots: dict[int, tuple[int, ...]] = {}

    def begin_game(self, rolls: Sequence[int], rng: random.Random | None) -> None:
        self._rng = rng

    def choose_slot(self, free_mask: int, roll: int) -> int:
        slots = self._slots.get(free_mask)
        if slots is None:
            slots = self._slots[free_mask] = slots_of_mask(free_mask)
        return slots[self._rng.randrange(len(slots))]


class ExactStrategy(Strategy):
    """Optimal play via the subset table, precompiled to a lookup grid."""

    name = "exact"

    def __init__(self, table: ExactTable):
        self.table = table
        xmin = table.pmf.xmin
        width = table.pmf.xmax - xmin + 1
        full = table.config.full_mask
        self._xmin = xmin
        # _choice[mask][roll - xmin]; mask 0 unused
        self._choice = [None] + [
            [best_move(table, mask, xmin + off) for off in range(width)]
            for mask in range(1, full + 1)
        ]

    def choose_slot(self, free_mask: int, roll: int) -> int:
        return self._choice[free_mask][roll - self._xmin]


class PolyStrategy(Strategy):
    """Optimal play via rank thresholds; never looks at the multipliers."""

    name = "poly"

    def __init__(self, table: ExpectationTable):
        self.table = table
        xmin = table.pmf.xmin
        width = table.pmf.xmax - xmin + 1
        self._xmin = xmin
        self._slots: dict[int, tuple[int, ...]] = {}
        # _rank[free_count][roll - xmin]; row 0 unused
        self._rank = [None] + [
            [choose_free_rank(table, count, xmin + off) for off in range(width)]
            for count in range(1, table.k + 1)
        ]

    def choose_slot(self, free_mask: int, roll: int) -> int:
        slots = self._slots.get(free_mask)
        if slots is None:
            slots = self._slots[free_mask] = slots_of_mask(free_mask)
        return slots[self._rank[len(slots)][roll - self._xmin] - 1]


class OmniscientStrategy(Strategy):
    """Peeks at the whole roll vector, then plays the sorted assignment."""

    name = "omniscient"

    def __init__(self):
        self._plan: list[int] = []
        self._move = 0

    def begin_game(self, rolls: Sequence[int], rng: random.Random) -> None:
        order = sorted(range(len(rolls)), key=lambda m: rolls[m])
        plan = [0] * len(rolls)
        for rank, move in enumerate(order):
            plan[move] = rank + 1
        self._plan = plan
        self._move = 0

    def choose_slot(self, free_mask: int, roll: int) -> int:
        slot = self._plan[self._move]
        self._move += 1
        return slot


# ── Simulation ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SimulationReport:
    """Statistics of one strategy over `games` seeded games.

    mean is the exact rational score-sum / games; median is the lower median.
    histogram maps bin starts (width 10) to counts.
    """

    strategy: str
    games: int
    seed: int
    mean: Fraction
    median: int
    min: int
    max: int
    histogram: dict[int, int]

    def summary(self, precision: int = 5) -> str:
        return (
            f"{self.strategy}: games={self.games} seed={self.seed} "
            f"mean={decimal_str(self.mean, precision)} median={self.median} "
            f"min={self.min} max={self.max}"
        )


def _play_games(
    strategies: Sequence[Strategy],
    pmf: Pmf,
    config: SlotConfig,
    games: int,
    seed: int,
    shared_rolls: bool,
) -> list[list]:
    sampler = RollSampler(pmf)
    denom, values, cumulative = sampler.denom, sampler.values, sampler.cumulative
    k = config.slot_count
    full = config.full_mask
    mult = [0] + [int(m) if m.denominator == 1 else m for m in config.multipliers]
    scores: list[list] = [[] for _ in strategies]
    wants_rng = [s.uses_placement_stream for s in strategies]
    Random = random.Random

    for g in range(games):
        shared: list[int] | None = None
        if shared_rolls:
            rr = Random(derive_substream(seed, g, 0)).randrange
            shared = [values[bisect_right(cumulative, rr(denom))] for _ in range(k)]
        for idx, strategy in enumerate(strategies):
            if shared is None:
                rr = Random(derive_substream(seed, g, 2 * idx)).randrange
                rolls = [values[bisect_right(cumulative, rr(denom))] for _ in range(k)]
            else:
                rolls = shared
            placement_rng = (
                Random(derive_substream(seed, g, 2 * idx + 1)) if wants_rng[idx] else None
            )
            strategy.begin_game(rolls, placement_rng)
            choose = strategy.choose_slot
            mask = full
            total = 0
            for roll in rolls:
                slot = choose(mask, roll)
                mask ^= 1 << (slot - 1)
                total += mult[slot] * roll
            scores[idx].append(total)
    return scores


def _report(strategy: Strategy, scores: list, games: int, seed: int) -> SimulationReport:
    ordered = sorted(scores)
    histogram: dict[int, int] = {}
    for s in scores:
        bin_start = int(s // 10) * 10
        histogram[bin_start] = histogram.get(bin_start, 0) + 1
    total = sum(scores)
    return SimulationReport(
        strategy=strategy.name,
        games=games,
        seed=seed,
        mean=Fraction(total, games),
        median=int(ordered[(games - 1) // 2]),
        min=int(ordered[0]),
        max=int(ordered[-1]),
        histogram=dict(sorted(histogram.items())),
    )


def simulate(
    strategy: Strategy, pmf: Pmf, config: SlotConfig, games: int, seed: int
) -> SimulationReport:
    """Play `games` seeded games with one strategy and report statistics."""
    if games < 1:
        raise ValidationError(f"need at least one game, got {games}")
    scores = _play_games([strategy], pmf, config, games, seed, shared_rolls=False)
    return _report(strategy, scores[0], games, seed)


def compare_strategies(
    strategies: Sequence[Strategy],
    pmf: Pmf,
    config: SlotConfig,
    games: int,
    seed: int,
    shared_rolls: bool = False,
) -> list[SimulationReport]:
    """Run several strategies; with shared_rolls each sees identical rolls per game."""
    if not strategies:
        raise ValidationError("need at least one strategy")
    if games < 1:
        raise ValidationError(f"need at least one game, got {games}")
    scores = _play_games(list(strategies), pmf, config, games, seed, shared_rolls)
    return [
        _report(strategy, scores[idx], games, seed)
        for idx, strategy in enumerate(strategies)
    ]


def paired_scores(
    strategies: Sequence[Strategy],
    pmf: Pmf,
    config: SlotConfig,
    games: int,
    seed: int,
) -> list[list]:
    """Per-game score vectors under shared rolls, for paired comparisons."""
    return _play_games(list(strategies), pmf, config, games, seed, shared_rolls=True)


def histogram_export(
    report: SimulationReport, bins: tuple[int, int] | None = None
) -> list[tuple[int, int, Fraction]]:
    """Rows (bin_start, count, frequency) over a contiguous bin range.

    Defaults to the observed span; pass an explicit (lo, hi) to cover a fixed
    plotting range (e.g. the full score span of the game).
    """
    observed = report.histogram
    if bins is None:
        lo, hi = min(observed), max(observed)
    else:
        lo, hi = bins
        lo = min(lo, min(observed))
        hi = max(hi, max(observed))
    rows = []
    for start in range(lo, hi + 1, 10):
        count = observed.get(start, 0)
        rows.append((start, count, Fraction(count, report.games)))
    return rows
