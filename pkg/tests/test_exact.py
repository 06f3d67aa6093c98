"""Tests for the subset DP table and its move queries."""

import random
from fractions import Fraction

import pytest

from slotdice import (
    CapacityError,
    NoMovesError,
    Pmf,
    RangeError,
    SlotConfig,
    best_move,
    build_exact_table,
    build_expectation_table,
    choose_free_rank,
    closest_call,
    decimal_str,
    move_evaluations,
    pmf_from_dice,
    slots_of_mask,
)
from slotdice.dice import DieSpec
from slotdice.exact import export_text, load_cache, save_cache
from slotdice.errors import ValidationError

TABLE2 = {
    1: "618.32001",
    2: "611.45000",
    3: "603.39355",
    4: "594.42809",
    5: "584.66842",
    6: "574.16842",
    7: "562.92809",
    8: "550.89355",
    9: "537.95000",
    10: "523.82001",
}

FIRST_MOVE = {
    3: (1, "621.32001"),
    4: (1, "622.32001"),
    5: (1, "623.32001"),
    6: (1, "624.32001"),
    7: (2, "625.45000"),
    8: (2, "627.45000"),
    9: (4, "630.42809"),
    10: (5, "634.66842"),
    11: (6, "640.16842"),
    12: (7, "646.92809"),
    13: (9, "654.95000"),
    14: (9, "663.95000"),
    15: (10, "673.82001"),
    16: (10, "683.82001"),
    17: (10, "693.82001"),
    18: (10, "703.82001"),
}


def expectimax_oracle(pmf, config, free_slots):
    """Memoization-free expectimax over the whole game tree (small inputs only)."""
    if not free_slots:
        return Fraction(0)
    total = Fraction(0)
    for x, p in zip(pmf.values(), pmf.probs):
        if p == 0:
            continue
        best = max(
            config.multipliers[slot - 1] * x
            + expectimax_oracle(pmf, config, free_slots - {slot})
            for slot in free_slots
        )
        total += p * best
    return total


def random_small_game(rng, max_slots=4, max_width=6):
    width = rng.randint(1, max_width)
    lo = rng.randint(0, 5)
    weights = [rng.randint(0, 3) for _ in range(width)]
    if not any(weights):
        weights[rng.randrange(width)] = 1
    total = sum(weights)
    pmf = Pmf.from_table(
        {lo + i: Fraction(w, total) for i, w in enumerate(weights) if w}
    )
    k = rng.randint(1, max_slots)
    mults = sorted(rng.sample(range(1, 30), k))
    return pmf, SlotConfig(mults)


class TestGoldenValues:
    def test_full_game_value(self, standard_table):
        assert decimal_str(standard_table.full_value, 10) == "642.2393504256"

    @pytest.mark.parametrize("missing,expected", sorted(TABLE2.items()))
    def test_cardinality_nine_row(self, standard_table, missing, expected):
        mask = standard_table.config.full_mask ^ (1 << (missing - 1))
        assert decimal_str(standard_table.value(mask), 5) == expected

    def test_singletons_are_multiplier_times_expectation(self, standard_table):
        for i in range(1, 11):
            assert standard_table.value(1 << (i - 1)) == Fraction(21, 2) * i

    def test_empty_set_is_zero(self, standard_table):
        assert standard_table.value(0) == 0

    def test_table_size(self, standard_table):
        assert len(standard_table.values) == 2**10


class TestTableInvariants:
    def test_recurrence_consistency(self, standard_pmf, standard_table):
        """Every stored entry equals a pure-Fraction recomputation from sub-entries."""
        values = standard_table.values
        mults = standard_table.config.multipliers
        for mask in range(1, 2**10):
            slots = slots_of_mask(mask)
            recomputed = Fraction(0)
            for x, p in zip(standard_pmf.values(), standard_pmf.probs):
                recomputed += p * max(
                    mults[s - 1] * x + values[mask ^ (1 << (s - 1))] for s in slots
                )
            assert recomputed == values[mask]

    def test_superset_monotonicity(self, standard_table):
        full = standard_table.config.full_mask
        for mask in range(1, full + 1):
            for slot in slots_of_mask(mask):
                assert standard_table.value(mask) > standard_table.value(mask ^ (1 << (slot - 1)))

    def test_oracle_equivalence_small_instances(self):
        rng = random.Random(314)
        for _ in range(12):
            pmf, config = random_small_game(rng)
            table = build_exact_table(pmf, config)
            oracle = expectimax_oracle(pmf, config, frozenset(range(1, config.slot_count + 1)))
            assert table.full_value == oracle

    def test_capacity_guard_names_footprint(self, standard_pmf):
        with pytest.raises(CapacityError, match="2\\^31"):
            build_exact_table(standard_pmf, SlotConfig(range(1, 32)))

    def test_capacity_guard_configurable(self, standard_pmf):
        with pytest.raises(CapacityError):
            build_exact_table(standard_pmf, SlotConfig(range(1, 7)), max_slots=5)


class TestBestMove:
    @pytest.mark.parametrize("roll,expected", sorted(FIRST_MOVE.items()))
    def test_first_move_strategy(self, standard_table, roll, expected):
        slot, value = expected
        assert best_move(standard_table, standard_table.config.full_mask, roll) == slot

    def test_single_free_slot(self, standard_table):
        for roll in (3, 10, 18):
            assert best_move(standard_table, 1 << 6, roll) == 7

    def test_empty_free_set(self, standard_table):
        with pytest.raises(NoMovesError):
            best_move(standard_table, 0, 10)

    def test_roll_out_of_range(self, standard_table):
        with pytest.raises(RangeError):
            best_move(standard_table, 3, 19)

    def test_tie_breaks_to_smallest_slot(self):
        # Coin on {1, 3} has expectation 2; at roll 2 both slots of a 2-slot
        # game give the same objective, so the smaller index must win.
        pmf = Pmf.from_table({1: Fraction(1, 2), 3: Fraction(1, 2)})
        config = SlotConfig([1, 2])
        table = build_exact_table(pmf, config)
        evaluations = move_evaluations(table, 0b11, 2)
        assert evaluations[0][1] == evaluations[1][1]
        assert best_move(table, 0b11, 2) == 1

    def test_monotone_first_move_mapping(self, standard_table):
        full = standard_table.config.full_mask
        slots = [best_move(standard_table, full, roll) for roll in range(3, 19)]
        assert slots == sorted(slots)

    def test_same_rank_for_odd_and_even_boards(self, standard_table, standard_expectations):
        """Roll 7 with all evens filled mirrors all odds filled, by free rank."""
        odd_free = sum(1 << (i - 1) for i in (1, 3, 5, 7, 9))
        even_free = sum(1 << (i - 1) for i in (2, 4, 6, 8, 10))
        rank_odd = slots_of_mask(odd_free).index(best_move(standard_table, odd_free, 7)) + 1
        rank_even = slots_of_mask(even_free).index(best_move(standard_table, even_free, 7)) + 1
        assert rank_odd == rank_even
        assert rank_odd == choose_free_rank(standard_expectations, 5, 7)


class TestMoveEvaluations:
    def test_roll_nine_top_two(self, standard_table):
        evaluations = move_evaluations(standard_table, standard_table.config.full_mask, 9)
        assert evaluations[0][0] == 4
        assert decimal_str(evaluations[0][1], 5) == "630.42809"
        assert evaluations[1][0] == 3
        assert decimal_str(evaluations[1][1], 5) == "630.39355"

    def test_roll_eighteen(self, standard_table):
        evaluations = move_evaluations(standard_table, standard_table.config.full_mask, 18)
        assert evaluations[0][0] == 10
        assert decimal_str(evaluations[0][1], 5) == "703.82001"

    def test_single_free_slot(self, standard_table):
        evaluations = move_evaluations(standard_table, 1 << 4, 7)
        assert evaluations == [(5, Fraction(35))]

    def test_sorted_descending(self, standard_table):
        evaluations = move_evaluations(standard_table, standard_table.config.full_mask, 11)
        values = [v for _, v in evaluations]
        assert values == sorted(values, reverse=True)
        assert len(evaluations) == 10


class TestClosestCall:
    def test_first_move(self, standard_table):
        call = closest_call(standard_table, "first-move")
        assert call.roll == 9
        assert (call.best_slot, call.runner_up_slot) == (4, 3)
        assert decimal_str(call.gap, 5) == "0.03455"

    def test_full_game(self, standard_table):
        call = closest_call(standard_table, "full-game")
        assert call.roll == 10
        assert call.free_slots == (1, 2, 3, 4, 5, 6, 7)  # seven consecutive slots
        assert decimal_str(call.gap, 5) == "0.02989"

    def test_single_slot_game_has_no_runner_up(self, standard_pmf):
        table = build_exact_table(standard_pmf, SlotConfig([1]))
        assert closest_call(table, "first-move") is None
        assert closest_call(table, "full-game") is None

    def test_unknown_scope(self, standard_table):
        with pytest.raises(ValidationError):
            closest_call(standard_table, "whole-match")

    def test_coin_game_against_subset_scan(self):
        """Independent scan: recompute every gap from the expectimax oracle."""
        pmf = pmf_from_dice([DieSpec([(1, 1), (2, 1)])])
        config = SlotConfig([1, 2, 3, 4])
        table = build_exact_table(pmf, config)

        best_gap = None
        for mask in range(3, 16):
            slots = slots_of_mask(mask)
            if len(slots) < 2:
                continue
            for roll in (1, 2):
                values = sorted(
                    (
                        config.multipliers[s - 1] * roll
                        + expectimax_oracle(pmf, config, frozenset(slots) - {s})
                        for s in slots
                    ),
                    reverse=True,
                )
                gap = values[0] - values[1]
                if gap > 0 and (best_gap is None or gap < best_gap):
                    best_gap = gap
        call = closest_call(table, "full-game")
        assert call.gap == best_gap
        assert call.gap > 0
        assert best_move(table, 0b1111, 1) == 1


class TestExportAndCache:
    def test_export_lines(self, standard_table):
        text = export_text(standard_table, 5)
        lines = text.strip().splitlines()
        assert lines[0] == "mask\tslots\texact\tvalue"
        assert len(lines) == 1 + 2**10
        mask, slots, exact_value, rendered = lines[-1].split("\t")
        assert int(mask) == 2**10 - 1
        assert slots == "1,2,3,4,5,6,7,8,9,10"
        assert rendered == "642.23935"
        num, den = exact_value.split("/")
        assert Fraction(int(num), int(den)) == standard_table.full_value

    def test_cache_round_trip(self, standard_table, tmp_path):
        path = tmp_path / "table.bin"
        save_cache(standard_table, path)
        loaded = load_cache(path, standard_table.pmf, standard_table.config)
        assert loaded.values == standard_table.values
        assert best_move(loaded, loaded.config.full_mask, 9) == 4

    def test_cache_rejects_other_spec(self, standard_table, loaded_pmf, loaded_config, tmp_path):
        path = tmp_path / "table.bin"
        save_cache(standard_table, path)
        with pytest.raises(ValidationError):
            load_cache(path, loaded_pmf, loaded_config)

    def test_cache_rejects_corruption(self, standard_table, tmp_path):
        path = tmp_path / "table.bin"
        save_cache(standard_table, path)
        blob = bytearray(path.read_bytes())
        blob[-1] ^= 0xFF
        path.write_bytes(bytes(blob))
        with pytest.raises(ValidationError):
            load_cache(path, standard_table.pmf, standard_table.config)
