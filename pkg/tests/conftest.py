"""Shared pytest fixtures for SJA toolkit tests."""

import math

import numpy as np
import pytest
from dotenv import load_dotenv

# SJA_* settings may come from a local .env file
load_dotenv()

from sja_auction.config import reset_settings
from sja_auction.dual_cert import CertGrid
from sja_auction.mechanism import Mechanism
from sja_auction.pricing import solve_normalized
from tests.helpers.builders import staircase_body


@pytest.fixture(autouse=True)
def clean_sja_env(monkeypatch):
    """Keep user settings out of numeric tests."""
    for name in (
        "SJA_SETTINGS_JSON",
        "SJA_SETTINGS_FILE",
        "SJA_THREADS",
        "SJA_CHUNK_SIZE",
        "SJA_LOG_LEVEL",
        "SJA_MAX_ORDER",
    ):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture(scope="session")
def two_item_prices():
    """Closed-form SJA prices for m = 2."""
    return [2.0 / 3.0, (4.0 - math.sqrt(2.0)) / 3.0]


@pytest.fixture(scope="session")
def profile_1():
    return solve_normalized(1)


@pytest.fixture(scope="session")
def profile_2():
    return solve_normalized(2)


@pytest.fixture(scope="session")
def profile_3():
    return solve_normalized(3)


@pytest.fixture(scope="session")
def mechanism_1(profile_1):
    return Mechanism(profile_1)


@pytest.fixture(scope="session")
def mechanism_2(profile_2):
    return Mechanism(profile_2)


@pytest.fixture(scope="session")
def mechanism_3(profile_3):
    return Mechanism(profile_3)


@pytest.fixture
def grid_m1_n10():
    return CertGrid(m=1, N=10)


@pytest.fixture
def grid_m2_n18():
    return CertGrid(m=2, N=18)


@pytest.fixture
def rng():
    """Seeded generator for randomized fixtures."""
    return np.random.default_rng(20240611)


@pytest.fixture
def square_staircase():
    """Symmetric downward-closed 2D body with rows of length 4, 3, 2, 1 on a 5-grid."""
    return staircase_body([4, 3, 2, 1], grid=5, cell_size=0.25)
