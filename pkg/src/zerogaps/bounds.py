"""Closed-form lower bounds for the oscillatory integral and the gap constants.

The integral ``J = int_0^1 sin(pi c v) / (pi v) (1 - v)^(ell^2) dv`` is bounded
below by replacing ``sin(pi x)`` with linear minorants ``s_j x`` on ``k``
equal pieces of ``[0, 1/2]`` (``x = c v``), discarding the rest of the
positive lobe, and bounding the remaining tail by an exponential integral.
Substituting ``ell^2 = b c - 1`` turns the bound into a one-variable
objective whose maximum over ``b`` is the gap constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import DomainError
from .numerics import exp_integral_e1, golden_max

AS_PRINTED = "as_printed"
RIGOROUS = "rigorous_k_piece"
MODES = (AS_PRINTED, RIGOROUS)

SQRT2 = math.sqrt(2.0)

# constants quoted alongside the chord-splitting refinements, keyed by (kind, k)
PUBLISHED_CONSTANTS: Dict[Tuple[str, int], float] = {
    ("theta", 1): 0.447,
    ("theta", 2): 0.570717,
    ("theta", 4): 0.593234,
    ("theta", 16): 0.599648,
    ("vartheta", 2): 0.359222,
    ("vartheta", 16): 0.379674,
}
THEOREM_THETA = 0.574271
THEOREM_VARTHETA = 0.299856
VARTHETA_CEILING = 0.5


@dataclass(frozen=True)
class BoundScheme:
    k: int = 2
    mode: str = RIGOROUS

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class ThetaResult:
    b_star: float
    theta: float
    scheme: BoundScheme
    boundary: Optional[str] = None
    valid: bool = True


def chord_slopes(k: int) -> List[float]:
    """Slopes ``s_j = 2k (sin(pi j / 2k) - sin(pi (j-1) / 2k))``, ``j = 1..k``.

    On the ``j``-th piece ``[(j-1)/2k, j/2k]`` the line ``s_j x`` stays below
    ``sin(pi x)``.
    """
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    j = np.arange(1, k + 1)
    s = 2 * k * (np.sin(np.pi * j / (2 * k)) - np.sin(np.pi * (j - 1) / (2 * k)))
    return s.tolist()


def chord_factor(x: float, k: int) -> float:
    """``s_1/2 - sum_{j<k} (s_j - s_{j+1})/2 e^{-x j/2k} - s_k/2 e^{-x/2}``.

    Summation by parts of the piecewise chord integrals after bounding
    ``(1 - v)^(ell^2 + 1)`` by ``exp(-(ell^2 + 1) v)``; ``x = (ell^2 + 1)/c``.
    """
    s = chord_slopes(k)
    total = s[0] / 2.0
    for j in range(1, k):
        total -= (s[j - 1] - s[j]) / 2.0 * math.exp(-x * j / (2 * k))
    total -= s[-1] / 2.0 * math.exp(-x / 2.0)
    return total


def _printed_large_factor(b):
    return SQRT2 - (2 * SQRT2 - 2) * math.exp(-b / 4) - (2 - SQRT2) * math.exp(-b / 2)


def theta_objective(b: float, scheme: BoundScheme = BoundScheme(2, AS_PRINTED)) -> float:
    """Large-gap objective whose maximum over ``b > 1`` gives Theta."""
    if not b > 1:
        raise DomainError(f"theta objective needs b > 1, got {b!r}")
    tail = exp_integral_e1(b - 1) / math.pi
    if scheme.mode == AS_PRINTED:
        if scheme.k != 2:
            raise DomainError("as_printed large-gap objective exists only for k = 2")
        pref = 2 * math.sqrt(b) * math.sqrt(1 - 1 / b)
        return pref * ((2 / (math.pi * b)) * _printed_large_factor(b) - tail)
    return 2 * math.sqrt(b - 1) * ((2 / (math.pi * b)) * chord_factor(b, scheme.k) - tail)


def vartheta_objective(b: float, scheme: BoundScheme = BoundScheme(1, AS_PRINTED)) -> float:
    """Small-gap objective whose maximum over ``b > 2`` gives vartheta.

    The ``as_printed`` form keeps the one-piece exponent ``e^{-b}`` exactly
    as displayed; the rigorous one-piece scheme has ``e^{-b/2}`` there.
    """
    if not b > 2:
        raise DomainError(f"vartheta objective needs b > 2, got {b!r}")
    pref = 2 * math.sqrt(b) * math.sqrt(0.5 - 1 / b)
    tail = exp_integral_e1(b - 2) / math.pi
    if scheme.mode == AS_PRINTED:
        if scheme.k != 1:
            raise DomainError("as_printed small-gap objective exists only for k = 1")
        return pref * ((2 / (math.pi * b)) * (1 - math.exp(-b)) - tail)
    return pref * ((2 / (math.pi * b)) * chord_factor(b, scheme.k) - tail)


def optimize_theta(
    scheme: BoundScheme = BoundScheme(2, AS_PRINTED),
    bracket: Tuple[float, float] = (3.0, 8.0),
    x_tol: float = 1e-8,
) -> ThetaResult:
    lo, hi = bracket
    if not lo > 1:
        raise DomainError("bracket must lie inside b > 1")
    res = golden_max(lambda b: theta_objective(b, scheme), lo, hi, x_tol)
    return ThetaResult(res.arg_star, res.val_star, scheme, res.boundary)


def optimize_vartheta(
    scheme: BoundScheme = BoundScheme(1, AS_PRINTED),
    bracket: Tuple[float, float] = (3.0, 9.0),
    x_tol: float = 1e-8,
) -> ThetaResult:
    """Maximize the small-gap objective; ``valid`` is False if the result exceeds 1/2.

    The lower bound on ``ell`` behind the objective assumes vartheta <= 1/2.
    """
    lo, hi = bracket
    if not lo > 2:
        raise DomainError("bracket must lie inside b > 2")
    res = golden_max(lambda b: vartheta_objective(b, scheme), lo, hi, x_tol)
    return ThetaResult(res.arg_star, res.val_star, scheme, res.boundary,
                       valid=res.val_star <= VARTHETA_CEILING)


def _integral_lower_bound(c, ell, delta, scheme):
    if scheme.mode == AS_PRINTED and scheme.k != 2:
        raise DomainError("as_printed upper bound on h+ exists only for k = 2")
    if not c >= 0.5:
        raise DomainError(f"chord bound needs c >= 1/2 so the pieces fit in [0, 1], got {c!r}")
    if not ell >= 1:
        raise DomainError(f"ell must be >= 1, got {ell!r}")
    if not 0 <= delta < 1:
        raise DomainError(f"delta must lie in [0, 1), got {delta!r}")
    m = ell * ell + 1
    x = m / c
    if scheme.mode == AS_PRINTED:
        factor = _printed_large_factor(x)
    else:
        factor = chord_factor(x, scheme.k)
    first = 2 * c * (1 - delta) / (math.pi * m) * factor
    return first - exp_integral_e1(ell * ell / c) / math.pi


def certified_h_plus_upper(
    c: float, ell: float, delta: float = 0.0, scheme: BoundScheme = BoundScheme(2, RIGOROUS)
) -> float:
    """Closed-form upper bound on ``h+(c)`` from the chord and tail estimates."""
    return c - 2 * ell * _integral_lower_bound(c, ell, delta, scheme)


def certified_h_minus_lower(
    c: float, ell: float, delta: float = 0.0, scheme: BoundScheme = BoundScheme(2, RIGOROUS)
) -> float:
    """Closed-form lower bound on ``h-(c)``; mirror image of :func:`certified_h_plus_upper`."""
    return c + 2 * ell * _integral_lower_bound(c, ell, delta, scheme)


def compare_published(kind: str, k: int, value: float, tol: float = 5e-3) -> Optional[dict]:
    """Deviation record against a quoted refinement constant, or None if none is quoted."""
    ref = PUBLISHED_CONSTANTS.get((kind, k))
    if ref is None:
        return None
    diff = value - ref
    return {"kind": kind, "k": k, "computed": value, "published": ref,
            "deviation": diff, "within_tol": abs(diff) <= tol}
