"""Acceptance suite: every headline number and property at its stated tolerance.

Each test covers one criterion and prints one PASS line (run with -s to see
them; pytest -v shows the same per-criterion outcome via test names).
"""

import random
import time
from fractions import Fraction

import pytest

from slotdice import (
    DieSpec,
    ExactStrategy,
    OmniscientStrategy,
    Pmf,
    RandomStrategy,
    SlotConfig,
    best_move,
    build_exact_table,
    build_expectation_table,
    build_omniscient,
    choose_free_rank,
    closest_call,
    decimal_str,
    iid_all_equal_probability,
    move_evaluations,
    omniscient_bruteforce,
    paired_scores,
    pmf_from_dice,
    poly_strategy_expected_score,
    simulate,
    slots_of_mask,
)

from test_exact import FIRST_MOVE, TABLE2, expectimax_oracle, random_small_game
from test_poly import LOADED_TRIANGLE, TRIANGLE, random_pmf


def ok(message):
    print(f"PASS: {message}")


@pytest.fixture(scope="module")
def standard():
    pmf = pmf_from_dice([DieSpec.fair(6)] * 3)
    config = SlotConfig.standard(10)
    started = time.perf_counter()
    table = build_exact_table(pmf, config)
    build_seconds = time.perf_counter() - started
    return pmf, config, table, build_seconds


class TestAcceptance:
    def test_exact_dp_golden_value(self, standard):
        pmf, config, table, build_seconds = standard
        assert decimal_str(table.full_value, 10) == "642.2393504256"
        assert build_seconds < 1.0, f"table build took {build_seconds:.2f}s"
        ok(f"exact DP value renders 642.2393504256 (built in {build_seconds * 1000:.0f} ms)")

    def test_cardinality_nine_golden_row(self, standard):
        _, config, table, _ = standard
        for missing, expected in TABLE2.items():
            mask = config.full_mask ^ (1 << (missing - 1))
            assert decimal_str(table.value(mask), 5) == expected, f"slot {missing}"
        ok("all ten drop-one-slot values match at 5 decimals")

    def test_first_move_golden_strategy(self, standard):
        _, config, table, _ = standard
        for roll, (slot, expected) in FIRST_MOVE.items():
            assert best_move(table, config.full_mask, roll) == slot, f"roll {roll}"
            value = move_evaluations(table, config.full_mask, roll)[0][1]
            assert decimal_str(value, 5) == expected, f"roll {roll}"
        ok("empty-board strategy and expected scores match for every roll 3..18")

    def test_rank_table_golden_triangle(self, standard):
        pmf, config, table, _ = standard
        expectations = build_expectation_table(pmf, 10)
        cells = 0
        for j, expected_row in enumerate(TRIANGLE, start=1):
            rendered = [decimal_str(v, 3) for v in expectations.row(j)]
            assert rendered == expected_row, f"row {j}"
            cells += len(expected_row)
        assert cells == 55
        assert poly_strategy_expected_score(expectations, config) == table.full_value
        ok("all 55 rank-table entries match at 3 decimals; scores equal as exact rationals")

    def test_omniscient_golden_and_oracle(self, standard):
        pmf, config, table, _ = standard
        started = time.perf_counter()
        omniscient_table = build_omniscient(pmf, config)
        assert decimal_str(omniscient_table.expected_score, 5) == "652.93403"
        enumerated = omniscient_bruteforce(pmf, config)
        elapsed = time.perf_counter() - started
        assert omniscient_table.expected_score == enumerated
        assert elapsed < 60.0, f"combined runtime {elapsed:.1f}s"
        ok(f"all-knowing value 652.93403 equals the 3,268,760-multiset "
           f"enumeration exactly ({elapsed:.1f}s)")

    def test_loaded_dice_variant(self):
        die = DieSpec.from_weights({**{v: 1 for v in range(1, 12)}, 12: 2})
        pmf = pmf_from_dice([die] * 2)
        config = SlotConfig.standard(5)

        numerators = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 14, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 4]
        assert [p * 169 for p in pmf.probs] == numerators

        expectations = build_expectation_table(pmf, 5)
        for j, expected_row in enumerate(LOADED_TRIANGLE, start=1):
            rendered = [decimal_str(v, 3) for v in expectations.row(j)]
            assert rendered == expected_row, f"row {j}"

        best = poly_strategy_expected_score(expectations, config)
        assert decimal_str(best, 5) == "231.11229"
        assert best == build_exact_table(pmf, config).full_value
        assert decimal_str(build_omniscient(pmf, config).expected_score, 5) == "236.97840"
        assert decimal_str(config.total() * Fraction(180, 13), 5) == "207.69231"
        ok("loaded-dice pmf exact over 169; rank triangle at 3 decimals; "
           "strategy scores 231.11229 / 236.97840 / 207.69231")

    def test_closest_calls(self, standard):
        _, _, table, _ = standard
        first = closest_call(table, "first-move")
        assert first.roll == 9
        assert (first.best_slot, first.runner_up_slot) == (4, 3)
        assert decimal_str(first.gap, 5) == "0.03455"

        full = closest_call(table, "full-game")
        assert full.roll == 10
        slots = full.free_slots
        assert len(slots) == 7
        assert slots == tuple(range(slots[0], slots[0] + 7))  # seven consecutive
        assert decimal_str(full.gap, 5) == "0.02989"
        ok("closest calls: 0.03455 at roll 9 (first move); "
           "0.02989 at roll 10 with seven consecutive free slots")

    def test_extreme_streak_probability(self, standard):
        pmf, _, _, _ = standard
        expected = Fraction(1, 221073919720733357899776)
        assert iid_all_equal_probability(pmf, 18, 10) == expected
        assert iid_all_equal_probability(pmf, 3, 10) == expected
        ok("ten identical extreme rolls have probability exactly "
           "1/221073919720733357899776")

    def test_simulation_reproduction(self, standard):
        pmf, config, table, _ = standard
        games = 1_000_000
        targets = [
            (RandomStrategy(), Fraction(1155, 2), 577),
            (ExactStrategy(table), table.full_value, 646),
            (OmniscientStrategy(), build_omniscient(pmf, config).expected_score, 654),
        ]
        started = time.perf_counter()
        lines = []
        for strategy, analytic_mean, golden_median in targets:
            report = simulate(strategy, pmf, config, games, seed=2718)
            assert abs(report.mean - analytic_mean) < Fraction(1, 2), strategy.name
            assert abs(report.median - golden_median) <= 1, strategy.name
            lines.append(f"{strategy.name} mean {decimal_str(report.mean, 5)} "
                         f"median {report.median}")
        elapsed = time.perf_counter() - started
        assert elapsed < 300.0, f"simulations took {elapsed:.0f}s"
        ok(f"3 x 10^6 games in {elapsed:.0f}s; " + "; ".join(lines))

    def test_property_rank_row_monotonicity(self):
        rng = random.Random(60902)
        for index in range(100):
            pmf = random_pmf(rng)
            k = rng.randint(1, 12)
            expectations = build_expectation_table(pmf, k)
            for j in range(1, k + 1):
                row = expectations.row(j)
                assert list(row) == sorted(row), f"case {index}, row {j}"
        ok("rank rows non-decreasing for 100 random pmfs at up to 12 slots")

    def test_property_exact_poly_agreement(self, standard):
        pmf, config, table, _ = standard
        expectations = build_expectation_table(pmf, 10)
        mults = config.multipliers
        pairs = 0
        for mask in range(1, 2**10):
            slots = slots_of_mask(mask)
            for roll in range(3, 19):
                rank_slot = slots[choose_free_rank(expectations, len(slots), roll) - 1]
                exact_slot = best_move(table, mask, roll)
                lhs = mults[rank_slot - 1] * roll + table.value(mask ^ (1 << (rank_slot - 1)))
                rhs = mults[exact_slot - 1] * roll + table.value(mask ^ (1 << (exact_slot - 1)))
                assert lhs == rhs, (mask, roll)
                pairs += 1
        assert pairs == 1023 * 16
        ok(f"rank and subset-table strategies agree on all {pairs} (free set, roll) pairs")

    def test_property_small_instance_oracle(self):
        rng = random.Random(777)
        for index in range(20):
            pmf, config = random_small_game(rng, max_slots=4, max_width=6)
            table = build_exact_table(pmf, config)
            oracle = expectimax_oracle(
                pmf, config, frozenset(range(1, config.slot_count + 1))
            )
            assert table.full_value == oracle, f"case {index}"
        ok("subset table equals memoization-free expectimax on 20 small instances")

    def test_property_shared_roll_dominance(self, standard):
        pmf, config, table, _ = standard
        games = 10_000
        random_scores, exact_scores, omniscient_scores = paired_scores(
            [RandomStrategy(), ExactStrategy(table), OmniscientStrategy()],
            pmf, config, games, seed=424242,
        )
        for g in range(games):
            assert omniscient_scores[g] >= exact_scores[g]
            assert omniscient_scores[g] >= random_scores[g]
        ok(f"all-knowing play dominates both strategies in every one of {games} shared-roll games")
