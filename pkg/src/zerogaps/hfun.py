"""Integral forms of the Montgomery-Odlyzko functionals h+ and h-.

In the limit of large height ``T`` the functionals reduce to

    h+(c) = c - 2 ell * J(c, ell, delta)
    h-(c) = c + 2 ell * J(c, ell, delta)

with ``J = int_0^1 sin(pi c v (1 - delta)) / (pi v) * (1 - v)^(ell^2) dv``.
A value ``h+(c) < r`` certifies that the normalized ``r``-gaps exceed ``c``
infinitely often; ``h-(c) > r`` certifies that they fall below ``c``.
The O(1/log T) corrections are not modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError, NoCertificateError
from .numerics import QuadSpec, integrate, sine_kernel

GRID_STEP = 1e-2
BISECT_TOL = 1e-5


@dataclass(frozen=True)
class HParams:
    c: float
    ell: float
    delta: float = 0.0
    quad: QuadSpec = field(default_factory=QuadSpec)

    def __post_init__(self):
        if not self.c >= 0:
            raise DomainError(f"c must be nonnegative, got {self.c!r}")
        if not self.ell >= 1:
            raise DomainError(f"ell must be >= 1, got {self.ell!r}")
        if not 0 <= self.delta < 1:
            raise DomainError(f"delta must lie in [0, 1), got {self.delta!r}")


@dataclass(frozen=True)
class TableRow:
    r: int
    ell: float
    c: float
    h_value: float


def sinc_weight_integral(c: float, ell: float, delta: float = 0.0, quad: QuadSpec = QuadSpec()) -> float:
    """``int_0^1 sin(pi c (1-delta) v) / (pi v) * (1 - v)^(ell^2) dv``."""
    freq = c * (1.0 - delta)
    if freq == 0.0:
        return 0.0
    power = ell * ell
    # panel breaks at the zeros v = j / freq of the sine
    breaks = [j / freq for j in range(1, int(math.floor(freq)) + 1)]

    def integrand(v):
        return sine_kernel(v, freq) * (1.0 - v) ** power

    return integrate(integrand, 0.0, 1.0, quad, breaks)


def h_plus(p: HParams) -> float:
    return p.c - 2.0 * p.ell * sinc_weight_integral(p.c, p.ell, p.delta, p.quad)


def h_minus(p: HParams) -> float:
    return p.c + 2.0 * p.ell * sinc_weight_integral(p.c, p.ell, p.delta, p.quad)


def _check_search_args(r, ell):
    if int(r) != r or r < 1:
        raise DomainError(f"r must be a positive integer, got {r!r}")
    if not ell >= 1:
        raise DomainError(f"ell must be >= 1, got {ell!r}")


def _bisect(pred, good, bad):
    # pred(good) is True, pred(bad) is False
    while abs(bad - good) > BISECT_TOL:
        mid = 0.5 * (good + bad)
        if pred(mid):
            good = mid
        else:
            bad = mid
    return good


def find_large_gap_c(r: int, ell: float, delta: float = 0.0, quad: QuadSpec = QuadSpec()) -> float:
    """Largest ``c`` below the first upward crossing of ``h+(c) = r`` past ``c = r``.

    Scans upward from ``c = r`` in steps of ``GRID_STEP`` up to
    ``r + 4 sqrt(r)`` and bisects the bracketing cell; the returned ``c``
    satisfies ``h+(c) < r`` and lies within ``BISECT_TOL`` of the crossing.
    """
    _check_search_args(r, ell)

    def feasible(c):
        return h_plus(HParams(c, ell, delta, quad)) < r

    c_max = r + 4.0 * math.sqrt(r)
    n_steps = int(math.ceil((c_max - r) / GRID_STEP))
    prev = None
    for i in range(n_steps + 1):
        c = min(r + i * GRID_STEP, c_max)
        if feasible(c):
            prev = c
            continue
        if prev is None:
            break
        return _bisect(feasible, prev, c)
    raise NoCertificateError(
        f"no c in [{r}, {c_max:.6g}] certifies h+(c) < {r} for ell={ell}", r=r, ell=ell
    )


def find_small_gap_c(r: int, ell: float, delta: float = 0.0, quad: QuadSpec = QuadSpec()) -> float:
    """Smallest ``c`` above the first downward crossing of ``h-(c) = r`` below ``c = r``."""
    _check_search_args(r, ell)

    def feasible(c):
        return h_minus(HParams(c, ell, delta, quad)) > r

    n_steps = int(math.ceil(r / GRID_STEP))
    prev = None
    for i in range(n_steps):
        c = r - i * GRID_STEP
        if c <= 0:
            break
        if feasible(c):
            prev = c
            continue
        if prev is None:
            break
        return _bisect(feasible, prev, c)
    if prev is not None:
        # h- tends to 0 as c -> 0+, so the crossing sits in (0, prev)
        return _bisect(feasible, prev, 0.0)
    raise NoCertificateError(f"h-({r}) <= {r} for ell={ell}; no certificate", r=r, ell=ell)


@dataclass
class TableResult:
    kind: str
    rows: List[TableRow]
    errors: List[Tuple[int, float, str]]


def round_certified(c: float, sig_digits: int, kind: str) -> float:
    """Round ``c`` to ``sig_digits`` significant digits, down for ``plus`` and up for ``minus``."""
    if sig_digits < 1:
        raise DomainError(f"sig_digits must be >= 1, got {sig_digits}")
    if c == 0:
        return 0.0
    scale = 10.0 ** (sig_digits - 1 - math.floor(math.log10(abs(c))))
    # guard against c*scale landing a hair off an integer
    x = round(c * scale, 9)
    return (math.floor(x) if kind == "plus" else math.ceil(x)) / scale


def build_table(
    kind: str,
    rows: Sequence[Tuple[int, float]],
    delta: float = 0.0,
    quad: QuadSpec = QuadSpec(),
    sig_digits: Optional[int] = None,
) -> TableResult:
    """Search ``c`` for each ``(r, ell)`` and re-evaluate ``h`` there.

    With ``sig_digits`` the found ``c`` is rounded to that many significant
    digits toward the certified side (down for ``plus``, up for ``minus``),
    which is how the published tables display it; the rounded value is kept
    only if it still certifies. Rows without a certificate are reported in
    ``errors`` rather than raised, so one bad row does not sink the table.
    """
    if kind not in ("plus", "minus"):
        raise DomainError(f"kind must be 'plus' or 'minus', got {kind!r}")
    if not rows:
        raise DomainError("rows must be nonempty")
    find = find_large_gap_c if kind == "plus" else find_small_gap_c
    h = h_plus if kind == "plus" else h_minus
    out: List[TableRow] = []
    errors: List[Tuple[int, float, str]] = []
    for r, ell in rows:
        try:
            c = find(r, ell, delta, quad)
        except NoCertificateError as exc:
            errors.append((r, ell, str(exc)))
            continue
        value = h(HParams(c, ell, delta, quad))
        if sig_digits is not None:
            shown = round_certified(c, sig_digits, kind)
            shown_value = h(HParams(shown, ell, delta, quad))
            if (shown_value < r) if kind == "plus" else (shown_value > r):
                c, value = shown, shown_value
        out.append(TableRow(r=r, ell=ell, c=c, h_value=value))
    return TableResult(kind=kind, rows=out, errors=errors)


def parse_rows(text: str) -> List[Tuple[int, float]]:
    """Parse ``"1:2.2,2:2.8"`` into ``[(1, 2.2), (2, 2.8)]``."""
    rows = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            r, ell = item.split(":")
            rows.append((int(r), float(ell)))
        except ValueError:
            raise DomainError(f"bad row spec {item!r}; expected r:ell") from None
    return rows


# published (r, ell, c, h) rows: large gaps (h+) and small gaps (h-)
TABLE1_ROWS = [(1, 2.2, 2.337, 0.99965), (2, 2.8, 3.708, 1.99937), (3, 3.3, 4.994, 2.99975),
               (4, 3.7, 6.235, 3.99950), (5, 4.0, 7.448, 4.99978)]
TABLE2_ROWS = [(1, 1.1, 0.5172, 1.00012), (2, 1.4, 1.126, 2.00118), (3, 1.9, 1.831, 3.00072),
               (4, 2.3, 2.588, 4.00099), (5, 2.7, 3.375, 5.00116)]
