"""Shared fixtures: the standard game, the loaded-dice variant, prebuilt tables."""

import pytest

from slotdice import (
    DieSpec,
    SlotConfig,
    build_exact_table,
    build_expectation_table,
    pmf_from_dice,
)

# A recorded ten-move demo game (roll, chosen slot), in play order. The player
# overrides the advice several times; the final score is exactly 698.
EXAMPLE_GAME_MOVES = [
    (8, 5),
    (4, 1),
    (5, 2),
    (8, 3),
    (10, 4),
    (12, 6),
    (13, 7),
    (14, 8),
    (15, 9),
    (17, 10),
]


@pytest.fixture(scope="session")
def standard_pmf():
    return pmf_from_dice([DieSpec.fair(6)] * 3)


@pytest.fixture(scope="session")
def standard_config():
    return SlotConfig.standard(10)


@pytest.fixture(scope="session")
def standard_table(standard_pmf, standard_config):
    return build_exact_table(standard_pmf, standard_config)


@pytest.fixture(scope="session")
def standard_expectations(standard_pmf):
    return build_expectation_table(standard_pmf, 10)


@pytest.fixture(scope="session")
def loaded_die():
    return DieSpec.from_weights({**{v: 1 for v in range(1, 12)}, 12: 2})


@pytest.fixture(scope="session")
def loaded_pmf(loaded_die):
    return pmf_from_dice([loaded_die] * 2)


@pytest.fixture(scope="session")
def loaded_config():
    return SlotConfig.standard(5)
