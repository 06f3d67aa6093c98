"""Engine, simulator, and advisor for the dice-placement game.

Roll a fixed dice pool each round, place the sum into one of k slots with
strictly increasing multipliers, and maximize the expected weighted sum.
Provides the exact subset-DP strategy, the equivalent polynomial rank
strategy, the all-knowing upper bound, seeded simulations, a CLI, and a
session-based advisor HTTP service.
"""

from .dice import (
    DieSpec,
    Pmf,
    conditional_at_most,
    expectation,
    iid_all_equal_probability,
    pmf_from_dice,
)
from .errors import (
    CapacityError,
    IllegalMoveError,
    IncompleteGameError,
    NoMovesError,
    RangeError,
    SequencingError,
    SlotDiceError,
    ValidationError,
)
from .exact import (
    ClosestCall,
    ExactTable,
    best_move,
    build_exact_table,
    closest_call,
    move_evaluations,
)
from .game import (
    GameState,
    SlotConfig,
    apply_move,
    random_strategy_expected_score,
    score,
    slots_of_mask,
)
from .gamespec import GameSpec, game_digest
from .omniscient import (
    OmniscientTable,
    build_omniscient,
    multiplier_range_sum,
    omniscient_bruteforce,
    omniscient_play,
)
from .poly import (
    ExpectationTable,
    build_expectation_table,
    choose_free_rank,
    poly_strategy_expected_score,
)
from .rendering import decimal_str, rational_str
from .simulate import (
    ExactStrategy,
    OmniscientStrategy,
    PolyStrategy,
    RandomStrategy,
    SimulationReport,
    Strategy,
    compare_strategies,
    histogram_export,
    paired_scores,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ClosestCall",
    "DieSpec",
    "ExactStrategy",
    "ExactTable",
    "ExpectationTable",
    "GameSpec",
    "GameState",
    "IllegalMoveError",
    "IncompleteGameError",
    "NoMovesError",
    "OmniscientStrategy",
    "OmniscientTable",
    "Pmf",
    "PolyStrategy",
    "RandomStrategy",
    "RangeError",
    "SequencingError",
    "SimulationReport",
    "SlotConfig",
    "SlotDiceError",
    "Strategy",
    "ValidationError",
    "apply_move",
    "best_move",
    "build_exact_table",
    "build_expectation_table",
    "build_omniscient",
    "choose_free_rank",
    "closest_call",
    "compare_strategies",
    "conditional_at_most",
    "decimal_str",
    "expectation",
    "game_digest",
    "histogram_export",
    "iid_all_equal_probability",
    "move_evaluations",
    "multiplier_range_sum",
    "omniscient_bruteforce",
    "omniscient_play",
    "paired_scores",
    "pmf_from_dice",
    "poly_strategy_expected_score",
    "random_strategy_expected_score",
    "rational_str",
    "score",
    "simulate",
    "slots_of_mask",
]
