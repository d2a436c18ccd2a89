import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for exact_oracles

from trihahn import ModelParams


@pytest.fixture(scope="session")
def fig1():
    """Odd-period reference parameters (transfer period 3*pi)."""
    return ModelParams(F(53, 3), F(34, 3), F(1, 6), 6)


@pytest.fixture(scope="session")
def fig2():
    """Even-period reference parameters (transfer period 2*pi, revival at pi)."""
    return ModelParams(F(19), F(23, 2), F(1, 4), 6)
