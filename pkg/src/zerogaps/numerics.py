"""Special functions, adaptive quadrature and scalar maximization.

Everything here is a pure function of its arguments. Integrands handed to
:func:`integrate` must be vectorized: they receive a 2-D ``ndarray`` of
abscissae and must return values of the same shape (or something that
broadcasts to it, such as a scalar ``0.0``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from .errors import DomainError, ToleranceNotMet

EULER_GAMMA = 0.57721566490153286061

# Switchover between the power series and the continued fraction for E1.
E1_SWITCH = 1.0


@dataclass(frozen=True)
class QuadSpec:
    abs_tol: float = 1e-9
    max_subdivisions: int = 5000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class OptResult:
    """Outcome of :func:`golden_max`.

    ``boundary`` is ``"lo"`` or ``"hi"`` when the coarse pre-scan found the
    maximum at that end of the search interval, else ``None``.
    """

    arg_star: float
    val_star: float
    bracket: Tuple[float, float]
    boundary: Optional[str] = None


# ---------------------------------------------------------------------------
# exponential integral
# ---------------------------------------------------------------------------

def _e1_series(x: float) -> float:
    # E1(x) = -gamma - ln x - sum_{n>=1} (-x)^n / (n n!)
    total = 0.0
    term = 1.0
    n = 0
    while True:
        n += 1
        term *= -x / n
        contrib = term / n
        total += contrib
        if abs(contrib) <= 1e-18 * max(abs(total), 1.0):
            break
    return -EULER_GAMMA - math.log(x) - total


def _e1_continued_fraction(x: float) -> float:
    # modified Lentz evaluation of e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 100000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def exp_integral_e1(x: float) -> float:
    """Exponential integral ``E1(x) = int_x^inf e^-u / u du`` for ``x > 0``."""
    x = float(x)
    if not x > 0 or math.isnan(x):
        raise DomainError(f"E1 diverges at x <= 0 (got {x!r})")
    if x <= E1_SWITCH:
        return _e1_series(x)
    return _e1_continued_fraction(x)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes (x[1], x[3], x[5], x[7])
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]


def _evaluate(f, x):
    return np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadSpec = QuadSpec(),
    breakpoints: Optional[Iterable[float]] = None,
) -> float:
    """Globally adaptive 15-point Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    ``breakpoints`` inside ``(a, b)`` start the refinement from separate
    panels; pass the zeros of an oscillating factor here. Each panel must
    meet a share of ``abs_tol`` proportional to its width, so the summed
    error estimate never exceeds ``abs_tol``.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise DomainError(f"integration interval must satisfy a < b, got [{a}, {b}]")
    edges = [a]
    if breakpoints is not None:
        edges.extend(sorted(p for p in set(map(float, breakpoints)) if a < p < b))
    edges.append(b)
    edges = np.asarray(edges)
    lo, hi = edges[:-1], edges[1:]
    length = b - a

    accepted = []
    err_total = 0.0
    used = len(lo)
    while True:
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        fx = _evaluate(f, mid[:, None] + half[:, None] * NODES[None, :])
        kron = half * (fx @ KRONROD_WEIGHTS)
        err = np.abs(kron - half * (fx @ GAUSS_WEIGHTS))
        if not np.all(np.isfinite(kron)):
            raise DomainError("integrand is not finite on the integration interval")
        ok = err <= spec.abs_tol * (hi - lo) / length
        accepted.extend(kron[ok].tolist())
        err_total += float(err[ok].sum())
        bad = ~ok
        n_bad = int(bad.sum())
        if n_bad == 0:
            break
        if used + n_bad > spec.max_subdivisions:
            estimate = math.fsum(accepted + kron[bad].tolist())
            raise ToleranceNotMet(
                f"quadrature tolerance {spec.abs_tol:g} not met within "
                f"{spec.max_subdivisions} subdivisions",
                estimate=estimate,
                error=err_total + float(err[bad].sum()),
            )
        used += n_bad
        lo_bad, mid_bad, hi_bad = lo[bad], mid[bad], hi[bad]
        lo = np.concatenate([lo_bad, mid_bad])
        hi = np.concatenate([mid_bad, hi_bad])
    return math.fsum(accepted)


def _envelope_constant(f, a, decay_rate):
    probes = a + np.linspace(0.0, 1.0 / decay_rate, 9)
    vals = np.abs(_evaluate(f, probes[None, :]))[0]
    return float(np.max(vals * np.exp(decay_rate * (probes - a))))


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    spec: QuadSpec = QuadSpec(),
    decay_rate: float = 1.0,
    bound: Optional[float] = None,
    zero_spacing: Optional[float] = None,
) -> float:
    """Integrate ``f`` over ``[a, inf)`` assuming ``|f(w)| <= C exp(-decay_rate (w - a))``.

    The tail beyond ``a + ln(2C / (abs_tol * decay_rate)) / decay_rate`` is
    below ``abs_tol / 2`` and dropped; the finite part gets the other half
    of the budget. ``bound`` supplies ``C`` directly; otherwise it is
    estimated from ``|f|`` near ``a``. ``zero_spacing`` places panel
    breaks at its integer multiples.
    """
    if not decay_rate > 0:
        raise DomainError(f"decay_rate must be positive, got {decay_rate!r}")
    a = float(a)
    const = _envelope_constant(f, a, decay_rate) if bound is None else float(bound)
    if const == 0.0:
        return 0.0
    span = math.log(2.0 * const / (spec.abs_tol * decay_rate)) / decay_rate
    if span <= 0.0:
        # the whole integral is already below abs_tol / 2
        return 0.0
    upper = a + span
    points = None
    if zero_spacing is not None:
        first = math.floor(a / zero_spacing) + 1
        last = math.ceil(upper / zero_spacing)
        points = [j * zero_spacing for j in range(first, last)]
    half = QuadSpec(spec.abs_tol / 2.0, spec.max_subdivisions)
    return integrate(f, a, upper, half, points)


def sine_kernel(v, freq):
    """``sin(pi freq v) / (pi v)``, continuous through ``v = 0`` where it equals ``freq``."""
    return freq * np.sinc(freq * np.asarray(v, dtype=float))


# ---------------------------------------------------------------------------
# optimization
# ---------------------------------------------------------------------------

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    x_tol: float = 1e-8,
    prescan: int = 64,
) -> OptResult:
    """Maximize a unimodal scalar function by golden-section search.

    A coarse scan of ``prescan + 1`` equally spaced points picks the cell
    holding the largest sample; the search then runs on that cell's two
    neighbours. A maximum on an end point of ``[lo, hi]`` is flagged in
    :attr:`OptResult.boundary`.
    """
    lo = float(lo)
    hi = float(hi)
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if not x_tol > 0:
        raise DomainError("x_tol must be positive")
    xs = np.linspace(lo, hi, prescan + 1)
    ys = [f(float(x)) for x in xs]
    i = int(np.argmax(ys))
    boundary = "lo" if i == 0 else "hi" if i == prescan else None
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, prescan)])

    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > x_tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    arg = 0.5 * (a + b)
    return OptResult(arg_star=arg, val_star=float(f(arg)), bracket=(a, b), boundary=boundary)
