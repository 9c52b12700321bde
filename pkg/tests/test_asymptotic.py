import math

import mpmath
import numpy as np
import pytest

from zerogaps.asymptotic import (
    AsympParams,
    asymptotic_integral,
    asymptotic_objective,
    closed_form_integral,
    h_plus_large_r,
    large_r_diagnostic,
    optimize_B,
    settling_r,
    tail_E,
    tail_majorant,
)
from zerogaps.errors import DomainError
from zerogaps.numerics import QuadSpec

B_QUOTED = 1.502243


def test_objective_at_quoted_B():
    with mpmath.workdps(30):
        ref = float(2 * mpmath.mpf(B_QUOTED) / mpmath.pi * mpmath.atan(mpmath.pi / mpmath.mpf(B_QUOTED) ** 2))
    assert asymptotic_objective(B_QUOTED) == pytest.approx(ref, abs=1e-14)
    # the printed four-digit constant
    assert round(asymptotic_objective(B_QUOTED), 4) == 0.9065


def test_objective_sqrt_pi():
    assert asymptotic_objective(math.sqrt(math.pi)) == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-15)


def test_objective_small_B_limit():
    B = 1e-6
    assert asymptotic_objective(B) == pytest.approx(B, rel=1e-6)


def test_objective_domain():
    with pytest.raises(DomainError):
        asymptotic_objective(0.0)


@pytest.mark.parametrize("B", [0.5, 1.0, 1.5, 2.0, 3.0, B_QUOTED])
def test_integral_closed_form(B):
    assert abs(asymptotic_integral(B, 0.0, QuadSpec(1e-10)) - math.atan(math.pi / B ** 2) / math.pi) <= 1e-8


def test_integral_values():
    assert asymptotic_integral(B_QUOTED, 0.0, QuadSpec(1e-10)) == pytest.approx(0.3017154032, abs=1e-8)
    assert asymptotic_integral(1.0, 0.0, QuadSpec(1e-10)) == pytest.approx(math.atan(math.pi) / math.pi, abs=1e-8)
    assert asymptotic_integral(1.0, 1.0) == 0.0


@pytest.mark.parametrize("delta", [0.01, 0.3])
def test_integral_with_delta(delta):
    got = asymptotic_integral(1.2, delta, QuadSpec(1e-10))
    assert got == pytest.approx(closed_form_integral(1.2, delta), abs=1e-8)


@pytest.mark.parametrize("r, B", [(1, 0.5), (1, B_QUOTED), (3, 1.0), (10, 1.5), (7.5, 0.3), (40, 0.2)])
def test_tail_majorant(r, B):
    assert abs(tail_E(r, B)) <= tail_majorant(r, B)


def test_tail_small():
    assert abs(tail_E(10, 1.5)) <= 2.4e-12


def test_tail_against_mpmath():
    r, B = 2.5, 0.7
    with mpmath.workdps(25):
        f = lambda w: mpmath.sin(mpmath.pi * w) / (mpmath.pi * w) * mpmath.exp(-B * B * w)
        ref = float(mpmath.quadosc(f, [r, mpmath.inf], omega=mpmath.pi))
    assert tail_E(r, B, 0.0, QuadSpec(1e-12)) == pytest.approx(ref, abs=1e-11)


def test_tail_delta_one():
    assert tail_E(2.0, 1.0, 1.0) == 0.0


def test_sqrt_r_tail_decreasing():
    B = 0.2
    seq = [math.sqrt(2 ** j) * abs(tail_E(2 ** j, B)) for j in range(11)]
    tail = seq[1:]
    assert all(a > b for a, b in zip(tail, tail[1:]))
    assert tail[-1] < 1e-15


def test_optimize_B():
    res = optimize_B((0.5, 4.0))
    assert res.arg_star == pytest.approx(1.5022, abs=1e-3)
    assert res.val_star == pytest.approx(0.90649, abs=1e-4)
    assert res.boundary is None


def test_optimize_B_boundary():
    res = optimize_B((2.0, 4.0))
    assert res.boundary == "lo"
    assert res.arg_star == pytest.approx(2.0, abs=1e-6)


def test_optimize_B_bracket_invariance():
    a = optimize_B((0.5, 4.0)).val_star
    b = optimize_B((0.1, 10.0)).val_star
    grid = np.linspace(0.1, 10, 100001)
    dense = max(asymptotic_objective(x) for x in grid)
    assert a == pytest.approx(b, abs=1e-6)
    assert a == pytest.approx(dense, abs=1e-6)


def test_unimodality_evidence():
    grid = np.linspace(0.1, 10, 10000)
    vals = np.array([asymptotic_objective(x) for x in grid])
    slope_sign = np.sign(np.diff(vals))
    assert np.count_nonzero(np.diff(slope_sign)) == 1


class TestLargeR:
    def test_below_r(self):
        r = 1e4
        value = h_plus_large_r(r, B_QUOTED, 0.9)
        assert value < r
        margin = (asymptotic_objective(B_QUOTED) - 0.9) * math.sqrt(r)
        assert r - value == pytest.approx(margin, rel=1e-6)

    def test_above_r(self):
        assert h_plus_large_r(1e4, B_QUOTED, 0.91) > 1e4

    def test_theta_zero(self):
        r = 50.0
        assert h_plus_large_r(r, B_QUOTED, 0.0) < r

    def test_small_gap_mirror(self):
        r = 1e4
        assert h_plus_large_r(r, B_QUOTED, 0.9, kind="minus") > r
        assert h_plus_large_r(r, B_QUOTED, 0.92, kind="minus") < r
        with pytest.raises(DomainError):
            h_plus_large_r(r, B_QUOTED, 1.0, kind="minus")

    def test_diagnostic(self):
        d = large_r_diagnostic(100, B_QUOTED)
        with mpmath.workdps(20):
            f = lambda w: mpmath.sin(mpmath.pi * w) / (mpmath.pi * w) * (1 - w / 100) ** (B_QUOTED ** 2 * 100)
            ref = float(mpmath.quad(f, mpmath.linspace(0, 100, 101)))
        assert d["finite_r_integral"] == pytest.approx(ref, abs=1e-9)
        assert d["difference"] == pytest.approx(ref - closed_form_integral(B_QUOTED) + d["tail_E"], abs=1e-9)

    def test_settling_r(self):
        r = settling_r(B_QUOTED, 1e-2)
        assert r is not None
        assert large_r_diagnostic(r, B_QUOTED)["correction"] < 1e-2
        assert large_r_diagnostic(r / 2, B_QUOTED)["correction"] >= 1e-2


def test_params_validation():
    with pytest.raises(DomainError):
        AsympParams(B=1.0, r=0.5)
    with pytest.raises(DomainError):
        AsympParams(B=0.0)
