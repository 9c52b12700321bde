"""Large-r regime: ell = B sqrt(r), the exponential-weight integral and its tail.

After ``w = r v`` the weight ``(1 - w/r)^(B^2 r)`` is replaced by its upper
envelope ``exp(-B^2 w)``, giving

    int_0^inf sin(pi w (1-delta)) / (pi w) exp(-B^2 w) dw = atan(pi (1-delta) / B^2) / pi

so the gap constant is ``max_B (2B/pi) atan(pi / B^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError
from .numerics import OptResult, QuadSpec, golden_max, integrate, integrate_semi_infinite, sine_kernel


@dataclass(frozen=True)
class AsympParams:
    B: float
    r: float = 1.0
    delta: float = 0.0
    quad: QuadSpec = field(default_factory=QuadSpec)

    def __post_init__(self):
        if not self.B > 0:
            raise DomainError(f"B must be positive, got {self.B!r}")
        if not self.r >= 1:
            raise DomainError(f"r must be >= 1, got {self.r!r}")
        _check_delta(self.delta)


def _check_B(B):
    if not B > 0:
        raise DomainError(f"B must be positive, got {B!r}")


def _check_delta(delta):
    if not 0 <= delta <= 1:
        raise DomainError(f"delta must lie in [0, 1], got {delta!r}")


def asymptotic_objective(B: float) -> float:
    """``(2B/pi) atan(pi/B^2)``."""
    _check_B(B)
    return 2 * B / math.pi * math.atan(math.pi / (B * B))


def closed_form_integral(B: float, delta: float = 0.0) -> float:
    """``atan(pi (1-delta) / B^2) / pi``."""
    _check_B(B)
    _check_delta(delta)
    return math.atan(math.pi * (1 - delta) / (B * B)) / math.pi


def _weighted_sinc(B, delta):
    freq = 1.0 - delta
    rate = B * B
    return lambda w: sine_kernel(w, freq) * np.exp(-rate * w)


def asymptotic_integral(B: float, delta: float = 0.0, quad: QuadSpec = QuadSpec()) -> float:
    """Quadrature of ``int_0^inf sin(pi w (1-delta))/(pi w) exp(-B^2 w) dw``."""
    _check_B(B)
    _check_delta(delta)
    freq = 1.0 - delta
    if freq == 0.0:
        return 0.0
    return integrate_semi_infinite(
        _weighted_sinc(B, delta), 0.0, quad, decay_rate=B * B, bound=freq, zero_spacing=1.0 / freq
    )


def tail_majorant(r: float, B: float) -> float:
    """``exp(-B^2 r) / (pi r B^2)``, an upper bound for ``|E(r)|``."""
    return math.exp(-B * B * r) / (math.pi * r * B * B)


def tail_E(r: float, B: float, delta: float = 0.0, quad: QuadSpec = QuadSpec()) -> float:
    """``E(r) = int_r^inf sin(pi w (1-delta))/(pi w) exp(-B^2 w) dw``.

    The tail is exponentially small, so the absolute tolerance is tightened
    to a millionth of :func:`tail_majorant` when that is smaller.
    """
    if not r >= 1:
        raise DomainError(f"r must be >= 1, got {r!r}")
    _check_B(B)
    _check_delta(delta)
    freq = 1.0 - delta
    bound = math.exp(-B * B * r) / (math.pi * r)
    if freq == 0.0 or bound == 0.0:
        return 0.0
    tol = min(quad.abs_tol, 1e-6 * tail_majorant(r, B))
    if tol == 0.0:
        return 0.0
    spec = QuadSpec(tol, quad.max_subdivisions)
    return integrate_semi_infinite(
        _weighted_sinc(B, delta), r, spec, decay_rate=B * B, bound=bound, zero_spacing=1.0 / freq
    )


def optimize_B(bracket: Tuple[float, float] = (0.5, 4.0), x_tol: float = 1e-10) -> OptResult:
    lo, hi = bracket
    if not lo > 0:
        raise DomainError("bracket must lie in B > 0")
    return golden_max(asymptotic_objective, lo, hi, x_tol)


def h_plus_large_r(
    r: float,
    B: float,
    theta: float,
    delta: float = 0.0,
    quad: QuadSpec = QuadSpec(),
    kind: str = "plus",
) -> float:
    """Large-r bound on ``h+`` at ``c = r + theta sqrt(r)`` (or ``h-`` at ``c = r - theta sqrt(r)``).

    ``kind="plus"`` returns ``c - 2B sqrt(r) (J - E(r))``, an upper bound on
    ``h+``; ``kind="minus"`` uses ``m = r - sqrt(r)`` and returns
    ``c + 2B sqrt(m) (J - E(m))``, a lower bound on ``h-`` valid for theta < 1.
    """
    if not r >= 1:
        raise DomainError(f"r must be >= 1, got {r!r}")
    _check_B(B)
    if kind == "plus":
        c = r + theta * math.sqrt(r)
        return c - 2 * B * math.sqrt(r) * (closed_form_integral(B, delta) - tail_E(r, B, delta, quad))
    if kind == "minus":
        if not 0 <= theta < 1:
            raise DomainError(f"small-gap large-r bound requires 0 <= theta < 1, got {theta!r}")
        c = r - theta * math.sqrt(r)
        m = r - math.sqrt(r)
        if m < 1:
            return c
        return c + 2 * B * math.sqrt(m) * (closed_form_integral(B, delta) - tail_E(m, B, delta, quad))
    raise DomainError(f"kind must be 'plus' or 'minus', got {kind!r}")


def large_r_diagnostic(r: float, B: float, delta: float = 0.0, quad: QuadSpec = QuadSpec()) -> dict:
    """Compare the finite-r weight ``(1 - w/r)^(B^2 r)`` with ``exp(-B^2 w)`` on ``[0, r]``.

    Returns both truncated integrals, their difference, the tail ``E(r)``
    and the total correction ``2B sqrt(r) (|E| + |difference|)`` that the
    large-r constant ignores.
    """
    if not r >= 1:
        raise DomainError(f"r must be >= 1, got {r!r}")
    _check_B(B)
    _check_delta(delta)
    freq = 1.0 - delta
    rate = B * B
    # both weights are below exp(-rate w); past w = 60/rate nothing is left at double precision
    upper = min(float(r), 60.0 / rate)
    breaks = [j / freq for j in range(1, int(upper * freq) + 1)] if freq > 0 else None

    def finite(w):
        return sine_kernel(w, freq) * np.clip(1.0 - w / r, 0.0, None) ** (rate * r)

    exact = integrate(finite, 0.0, upper, quad, breaks)
    tail = tail_E(r, B, delta, quad)
    limit = closed_form_integral(B, delta) - tail
    diff = exact - limit
    return {
        "r": float(r),
        "B": B,
        "finite_r_integral": exact,
        "exponential_integral": limit,
        "difference": diff,
        "tail_E": tail,
        "correction": 2 * B * math.sqrt(r) * (abs(tail) + abs(diff)),
    }


def settling_r(B: float, tol: float, delta: float = 0.0, max_doublings: int = 40) -> Optional[float]:
    """Smallest ``r = 2^j`` at which the ignored large-r correction drops below ``tol``.

    Returns None if none of ``r = 1, 2, ..., 2^max_doublings`` qualifies.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    for j in range(max_doublings + 1):
        r = float(2 ** j)
        if large_r_diagnostic(r, B, delta)["correction"] < tol:
            return r
    return None
