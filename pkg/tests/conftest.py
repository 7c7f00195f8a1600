import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make the oracle module importable

from dclinalg import DCMatrix, DualComplex

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def rand_dc(rng) -> DualComplex:
    q0, q1, q2, q3 = rng.standard_normal(4)
    return DualComplex.from_reals(q0, q1, q2, q3)


def cgauss(rng, m, n) -> np.ndarray:
    return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / np.sqrt(2)


def rand_dcmatrix(rng, m, n) -> DCMatrix:
    return DCMatrix(cgauss(rng, m, n), cgauss(rng, m, n))
