"""Arithmetic functions and the discrete Montgomery-Odlyzko functional.

The discrete functional at finite height is

    h(c) = c - N / D,
    N = sum_{k n <= X} a(n) a(k n) g_c(k) Lambda(k) / (k n),
    D = sum_{n <= X} a(n)^2 / n,

with ``a = d_ell`` for large gaps and ``a = liouville * d_ell`` for small
gaps. The Liouville factor makes ``a(n) a(pn) = -d_ell(n) d_ell(pn)`` for
primes ``p``, which is what turns ``c - 2 ell J`` into ``c + 2 ell J`` in
the large-T limit.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Tuple

import numpy as np

from .errors import DomainError, ResourceError

SIEVE_LIMIT_ENV = "ZEROGAPS_SIEVE_LIMIT"
DEFAULT_SIEVE_LIMIT = 50_000_000


def sieve_limit() -> int:
    raw = os.environ.get(SIEVE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_SIEVE_LIMIT
    try:
        return int(float(raw))
    except ValueError:
        raise DomainError(f"{SIEVE_LIMIT_ENV}={raw!r} is not a number") from None


def _chunks(X: int) -> Iterator[np.ndarray]:
    # n // spf(n) <= n // 2, so each block [L, 2L) depends only on [1, L)
    L = 2
    while L <= X:
        yield np.arange(L, min(2 * L, X + 1))
        L *= 2


class SieveTables:
    """Smallest-prime-factor sieve up to ``X`` with derived multiplicative data.

    ``spf[n]`` is the least prime dividing ``n``; ``spf_exp[n]`` its
    exponent; ``cofactor[n]`` is ``n`` with that prime power removed;
    ``big_omega[n]`` counts prime factors with multiplicity. Index 0 is
    unused and index 1 holds neutral values.
    """

    def __init__(self, X: int):
        X = int(X)
        if X < 1:
            raise DomainError(f"X must be >= 1, got {X}")
        limit = sieve_limit()
        if X > limit:
            raise ResourceError(f"X = {X} exceeds the sieve budget {limit} (set {SIEVE_LIMIT_ENV})")
        self.X = X
        spf = np.zeros(X + 1, dtype=np.int64)
        for p in range(2, math.isqrt(X) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
        idx = np.arange(X + 1)
        unset = (spf == 0) & (idx >= 2)
        spf[unset] = idx[unset]
        spf[1] = 1

        spf_exp = np.zeros(X + 1, dtype=np.int64)
        cofactor = np.ones(X + 1, dtype=np.int64)
        big_omega = np.zeros(X + 1, dtype=np.int64)
        for n in _chunks(X):
            p = spf[n]
            rest = n // p
            same = spf[rest] == p
            spf_exp[n] = np.where(same, spf_exp[rest] + 1, 1)
            cofactor[n] = np.where(same, cofactor[rest], rest)
            big_omega[n] = big_omega[rest] + 1
        self.spf = spf
        self.spf_exp = spf_exp
        self.cofactor = cofactor
        self.big_omega = big_omega

    @cached_property
    def primes(self) -> np.ndarray:
        idx = np.arange(self.X + 1)
        return idx[(idx >= 2) & (self.spf == idx)]

    @cached_property
    def prime_powers(self) -> np.ndarray:
        idx = np.arange(self.X + 1)
        return idx[(idx >= 2) & (self.cofactor == 1)]

    def liouville_array(self) -> np.ndarray:
        return np.where(self.big_omega % 2 == 0, 1.0, -1.0)

    def von_mangoldt_array(self) -> np.ndarray:
        out = np.zeros(self.X + 1)
        pp = self.prime_powers
        out[pp] = np.log(self.spf[pp])
        return out

    def d_ell_array(self, ell: int) -> np.ndarray:
        """``d_ell(n)`` for ``0 <= n <= X`` as floats (exact below 2^53); ``[0]`` is 0."""
        ell = _check_ell(ell)
        max_exp = int(self.spf_exp.max()) if self.X >= 2 else 0
        local = np.array([math.comb(m + ell - 1, m) for m in range(max_exp + 1)], dtype=float)
        d = np.ones(self.X + 1)
        d[0] = 0.0
        for n in _chunks(self.X):
            d[n] = d[self.cofactor[n]] * local[self.spf_exp[n]]
        return d

    def factor(self, n: int) -> Iterator[Tuple[int, int]]:
        n = int(n)
        if not 1 <= n <= self.X:
            raise DomainError(f"{n} outside sieve range [1, {self.X}]")
        while n > 1:
            yield int(self.spf[n]), int(self.spf_exp[n])
            n = int(self.cofactor[n])


def sieve_tables(X: int) -> SieveTables:
    return SieveTables(X)


def _check_ell(ell):
    if int(ell) != ell or ell < 1:
        raise DomainError(f"ell must be a positive integer, got {ell!r}")
    return int(ell)


def _check_positive_int(n, name="n"):
    if int(n) != n or n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n!r}")
    return int(n)


def factorize(n: int, tables: SieveTables | None = None) -> Iterator[Tuple[int, int]]:
    """Yield ``(p, m)`` with ``p^m || n`` in increasing ``p``."""
    n = _check_positive_int(n)
    if tables is not None and n <= tables.X:
        yield from tables.factor(n)
        return
    p = 2
    while p * p <= n:
        if n % p == 0:
            m = 0
            while n % p == 0:
                n //= p
                m += 1
            yield p, m
        p += 1 if p == 2 else 2
    if n > 1:
        yield n, 1


def d_ell(n: int, ell: int, tables: SieveTables | None = None) -> int:
    """Generalized divisor function: multiplicative, ``d_ell(p^m) = C(m + ell - 1, m)``."""
    ell = _check_ell(ell)
    out = 1
    for _, m in factorize(n, tables):
        out *= math.comb(m + ell - 1, m)
    return out


def von_mangoldt(k: int, tables: SieveTables | None = None) -> float:
    fac = list(factorize(k, tables))
    return math.log(fac[0][0]) if len(fac) == 1 else 0.0


def liouville(n: int, tables: SieveTables | None = None) -> int:
    omega = sum(m for _, m in factorize(n, tables))
    return -1 if omega % 2 else 1


def g_kernel(k: int, c: float, logT: float) -> float:
    """``2 sin(pi c log k / log T) / (pi log k)``; bounded by ``2c / log T``."""
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k!r}")
    if not logT > 0:
        raise DomainError(f"logT must be positive, got {logT!r}")
    lk = math.log(k)
    g = 2.0 * math.sin(math.pi * c * lk / logT) / (math.pi * lk)
    assert abs(g) <= 2.0 * abs(c) / logT * (1 + 1e-14)
    return g


@dataclass(frozen=True)
class DiscreteParams:
    X: int
    logT: float
    ell: int
    sign: str = "plus"
    c: float = 0.0

    def __post_init__(self):
        _check_positive_int(self.X, "X")
        _check_ell(self.ell)
        if not self.logT > 0:
            raise DomainError(f"logT must be positive, got {self.logT!r}")
        if math.log(self.X) > self.logT * (1 + 1e-12):
            raise DomainError("need X <= T, i.e. log X <= logT")
        if self.sign not in ("plus", "minus"):
            raise DomainError(f"sign must be 'plus' or 'minus', got {self.sign!r}")
        if not self.c >= 0:
            raise DomainError(f"c must be nonnegative, got {self.c!r}")


def coefficients(tables: SieveTables, ell: int, sign: str) -> np.ndarray:
    a = tables.d_ell_array(ell)
    if sign == "minus":
        a = a * tables.liouville_array()
    return a


def h_discrete(p: DiscreteParams, tables: SieveTables | None = None) -> float:
    """Finite-``X`` functional; ``tables`` may be any sieve reaching at least ``p.X``."""
    if tables is None or tables.X < p.X:
        tables = sieve_tables(p.X)
    if p.c == 0:
        return 0.0
    X = p.X
    a = coefficients(tables, p.ell, p.sign)[: X + 1]
    n = np.arange(1, X + 1)
    denom = math.fsum((a[1:] ** 2 / n).tolist())
    spf = tables.spf
    terms = []
    for k in tables.prime_powers[tables.prime_powers <= X].tolist():
        m = np.arange(1, X // k + 1)
        inner = math.fsum((a[m] * a[k * m] / (k * m)).tolist())
        terms.append(g_kernel(k, p.c, p.logT) * math.log(spf[k]) * inner)
    return p.c - math.fsum(terms) / denom
