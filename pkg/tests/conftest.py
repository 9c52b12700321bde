import math
import os

import mpmath
import numpy as np
import pytest

from zerogaps.zeros import ZeroTable, load_zeros_file

ZEROS_ENV = "ZEROGAPS_ZEROS_FILE"


def unit_gap_ordinates(start=20.0, count=500):
    """Ordinates whose consecutive normalized gaps all equal 1 (up to rounding)."""
    g = [start]
    for _ in range(count - 1):
        g.append(g[-1] + 2 * math.pi / math.log(g[-1]))
    return g


@pytest.fixture
def unit_gap_table():
    return ZeroTable.from_values(unit_gap_ordinates(), source="synthetic-unit")


@pytest.fixture
def jittered_table():
    rng = np.random.default_rng(12345)
    base = np.asarray(unit_gap_ordinates(30.0, 2000))
    steps = np.diff(base) * rng.uniform(0.2, 2.2, size=len(base) - 1)
    return ZeroTable.from_values(np.concatenate([[30.0], 30.0 + np.cumsum(steps)]), source="synthetic-jitter")


@pytest.fixture(scope="session")
def genuine_zeros_path(tmp_path_factory):
    """First 60 zeta-zero ordinates computed with mpmath, written in the table format."""
    path = tmp_path_factory.mktemp("zeros") / "first60.txt"
    with mpmath.workdps(20):
        lines = [mpmath.nstr(mpmath.zetazero(n).imag, 15) for n in range(1, 61)]
    path.write_text("# first 60 ordinates, mpmath.zetazero\n" + "\n".join(lines) + "\n")
    return path


@pytest.fixture(scope="session")
def user_zero_table():
    path = os.environ.get(ZEROS_ENV)
    if not path:
        return None
    return load_zeros_file(path)
