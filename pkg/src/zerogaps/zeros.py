"""Zero-ordinate tables and normalized r-gap statistics.

Input format: UTF-8 text, one ordinate per line as a decimal literal.
Blank lines and lines starting with ``#`` are skipped. Values must be
strictly positive and nondecreasing.

Indices follow the usual numbering of zeros: ``n = 1`` is the first
ordinate in the table.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Tuple, Union

import numpy as np

from .bounds import THEOREM_THETA, THEOREM_VARTHETA
from .errors import (
    DomainError,
    EmptyTableError,
    MonotonicityError,
    ZeroTableError,
    ZeroTableParseError,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class ZeroTable:
    ordinates: np.ndarray
    source: str = ""
    line_numbers: Tuple[int, ...] = ()

    def __len__(self):
        return len(self.ordinates)

    def __eq__(self, other):
        if not isinstance(other, ZeroTable):
            return NotImplemented
        return self.source == other.source and np.array_equal(self.ordinates, other.ordinates)

    @classmethod
    def from_values(cls, values, source: str = "in-memory") -> "ZeroTable":
        arr = np.asarray(values, dtype=float)
        _validate(arr, range(1, len(arr) + 1))
        arr = arr.copy()
        arr.setflags(write=False)
        return cls(arr, source, tuple(range(1, len(arr) + 1)))


@dataclass(frozen=True)
class GapReport:
    r: int
    max_norm: float
    argmax: int
    min_norm: float
    argmin: int
    count_above: int
    count_below: int
    theta_used: float
    vartheta_used: float
    n_gaps: int


@dataclass(frozen=True)
class CountingCheck:
    T: float
    empirical: int
    main_term: float
    refined_term: float


def _validate(arr, lines):
    lines = list(lines)
    if len(arr) == 0:
        raise EmptyTableError("no ordinates in input")
    nonpos = np.nonzero(~(arr > 0))[0]
    if len(nonpos):
        i = int(nonpos[0])
        raise ZeroTableError(f"ordinate {arr[i]!r} is not positive", line=lines[i])
    drops = np.nonzero(np.diff(arr) < 0)[0]
    if len(drops):
        i = int(drops[0]) + 1
        raise MonotonicityError(f"ordinate {arr[i]!r} is below its predecessor {arr[i - 1]!r}", line=lines[i])


def load_zeros(data: Union[bytes, str, BinaryIO], source: str = "") -> ZeroTable:
    """Parse a zero table from bytes, text, or a binary/text stream."""
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ZeroTableParseError(f"input is not UTF-8 text: {exc}") from None
    values = []
    lines = []
    for lineno, raw in enumerate(io.StringIO(data), start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            value = float(text)
        except ValueError:
            raise ZeroTableParseError(f"not a decimal number: {text!r}", line=lineno) from None
        if not math.isfinite(value):
            raise ZeroTableParseError(f"not a finite number: {text!r}", line=lineno)
        values.append(value)
        lines.append(lineno)
    arr = np.asarray(values, dtype=float)
    _validate(arr, lines)
    arr.setflags(write=False)
    return ZeroTable(arr, source, tuple(lines))


def load_zeros_file(path: Union[str, Path]) -> ZeroTable:
    path = Path(path)
    with path.open("rb") as fh:
        return load_zeros(fh, source=str(path))


def _check_r(t: ZeroTable, r):
    if int(r) != r or r < 1:
        raise DomainError(f"r must be a positive integer, got {r!r}")
    if len(t) < r + 1:
        raise DomainError(f"table of {len(t)} ordinates has no {r}-gaps")
    return int(r)


def normalized_gap(t: ZeroTable, n: int, r: int = 1) -> float:
    """``(gamma_{n+r} - gamma_n) log(gamma_n) / (2 pi r)`` for 1-based ``n``."""
    r = _check_r(t, r)
    if int(n) != n or not 1 <= n <= len(t) - r:
        raise DomainError(f"index n={n!r} outside [1, {len(t) - r}]")
    lo = float(t.ordinates[n - 1])
    if not lo > 1:
        raise DomainError(f"gamma_{n} = {lo} <= 1 has no positive log-normalization")
    hi = float(t.ordinates[n - 1 + r])
    return (hi - lo) * math.log(lo) / (TWO_PI * r)


def normalized_gaps(t: ZeroTable, r: int = 1) -> np.ndarray:
    """All normalized ``r``-gaps; entry ``i`` belongs to ``n = i + 1``."""
    r = _check_r(t, r)
    lo = t.ordinates[:-r]
    if not np.all(lo > 1):
        bad = int(np.argmin(lo > 1)) + 1
        raise DomainError(f"gamma_{bad} <= 1 has no positive log-normalization")
    return (t.ordinates[r:] - lo) * np.log(lo) / (TWO_PI * r)


def gap_report(
    t: ZeroTable, r: int = 1, theta: float = THEOREM_THETA, vartheta: float = THEOREM_VARTHETA
) -> GapReport:
    """Extremes of the normalized ``r``-gaps and counts past ``1 +- const/sqrt(r)``."""
    gaps = normalized_gaps(t, r)
    upper = 1.0 + theta / math.sqrt(r)
    lower = 1.0 - vartheta / math.sqrt(r)
    imax = int(np.argmax(gaps))
    imin = int(np.argmin(gaps))
    return GapReport(
        r=int(r),
        max_norm=float(gaps[imax]),
        argmax=imax + 1,
        min_norm=float(gaps[imin]),
        argmin=imin + 1,
        count_above=int(np.count_nonzero(gaps > upper)),
        count_below=int(np.count_nonzero(gaps < lower)),
        theta_used=float(theta),
        vartheta_used=float(vartheta),
        n_gaps=len(gaps),
    )


def counting_check(t: ZeroTable, T: float) -> CountingCheck:
    """Compare ``#{gamma <= T}`` with ``(T/2pi) log T`` and ``(T/2pi) log(T/2pi) - T/2pi``."""
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    if T > t.ordinates[-1]:
        raise DomainError(f"T = {T} is beyond the last ordinate {t.ordinates[-1]}")
    empirical = int(np.searchsorted(t.ordinates, T, side="right"))
    x = T / TWO_PI
    return CountingCheck(
        T=float(T),
        empirical=empirical,
        main_term=x * math.log(T),
        refined_term=x * math.log(x) - x,
    )
