"""Truncated Euler products for prime-pair constants.

Every product runs over odd primes p <= P in increasing order. Factors are
accumulated as a sum of logarithms with ``math.fsum`` (exactly rounded, so
the result does not depend on how the primes are blocked), then
exponentiated once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .primes import pow_mod_array, sieve_primes
from .residues import OffsetPolynomial, PairFamily, nu_counts

DEFAULT_TRUNCATION = 10**6


class UndefinedRatioError(ValueError):
    pass


@dataclass(frozen=True)
class EulerProductEstimate:
    value: float
    truncation_bound: int
    factors_used: int
    vanished: bool = False
    reducible: bool = False

    def __float__(self):
        return self.value


@lru_cache(maxsize=8)
def odd_primes_upto(P: int) -> np.ndarray:
    primes = sieve_primes(P).primes[1:]
    primes.setflags(write=False)
    return primes


def _check_bound(P: int):
    if P < 3:
        raise ValueError(f"truncation bound must be >= 3, got {P}")


def _product(log_factors: np.ndarray, P: int) -> EulerProductEstimate:
    return EulerProductEstimate(math.exp(math.fsum(log_factors.tolist())), P, len(log_factors))


# --- reducibility of x**k + q ------------------------------------------------


def _prime_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _exact_root(a: int, m: int) -> int | None:
    """Integer b with b**m == a, or None."""
    if a < 0:
        if m % 2 == 0:
            return None
        b = _exact_root(-a, m)
        return None if b is None else -b
    b = round(a ** (1.0 / m)) if a else 0
    for c in (b - 1, b, b + 1):
        if c >= 0 and c**m == a:
            return c
    # float guess can be far off for huge a; fall back to bisection
    lo, hi = 0, 1 << (a.bit_length() // m + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**m
        if v == a:
            return mid
        if v < a:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def is_reducible(g: OffsetPolynomial) -> bool:
    """Whether x**k + q factors over the integers (Capelli's criterion).

    With a = -q, the binomial x**k - a is reducible iff a is an m-th power
    for some prime m dividing k, or 4 | k and a = -4 b**4.
    """
    a = -g.q
    for m in _prime_divisors(g.k):
        if _exact_root(a, m) is not None:
            return True
    if g.k % 4 == 0 and a < 0 and a % 4 == 0 and _exact_root(-a // 4, 4) is not None:
        return True
    return False


# --- the constants -------------------------------------------------------------


def _odd_part_divisors(r: int) -> list[int]:
    return [p for p in _prime_divisors(r) if p > 2]


@lru_cache(maxsize=16)
def twin_prime_constant(P: int = DEFAULT_TRUNCATION) -> EulerProductEstimate:
    """Truncated product of 1 - 1/(p-1)**2 over 2 < p <= P."""
    _check_bound(P)
    p = odd_primes_upto(P).astype(np.float64)
    return _product(np.log1p(-1.0 / (p - 1.0) ** 2), P)


def hl_constant(two_r: int, P: int = DEFAULT_TRUNCATION) -> EulerProductEstimate:
    """Hardy-Littlewood constant for the pair (p, p + 2r)."""
    if two_r == 0 or two_r % 2:
        raise ValueError(f"two_r must be a nonzero even integer, got {two_r}")
    c2 = twin_prime_constant(P)
    extra = math.prod((p - 1) / (p - 2) for p in _odd_part_divisors(two_r // 2))
    return EulerProductEstimate(c2.value * extra, P, c2.factors_used)


@lru_cache(maxsize=4096)
def _legendre_row(a: int, P: int) -> np.ndarray:
    # (a/p) for every odd p <= P, by Euler's criterion
    primes = odd_primes_upto(P)
    row = pow_mod_array(a % primes, (primes - 1) // 2, primes)
    row = np.where(row == primes - 1, -1, row).astype(np.int8)
    row.setflags(write=False)
    return row


def _local_nu(g: OffsetPolynomial, P: int) -> np.ndarray:
    """nu(p) for odd p <= P; quadratic case assembled from prime-factor rows."""
    if g.k != 2:
        return nu_counts(g, odd_primes_upto(P))
    a = -g.q
    sym = np.array(_legendre_row(-1 if a < 0 else 1, P), dtype=np.int64)
    for ell in _prime_divisors(a):
        e, rest = 0, abs(a)
        while rest % ell == 0:
            rest //= ell
            e += 1
        if e % 2:
            sym *= _legendre_row(ell, P)
        else:
            sym *= np.abs(_legendre_row(ell, P))
    return 1 + sym


@lru_cache(maxsize=8192)
def gamma_constant(g: OffsetPolynomial, P: int = DEFAULT_TRUNCATION) -> EulerProductEstimate:
    """Truncated product of (p - nu(p)) / (p - 1) over odd p <= P."""
    _check_bound(P)
    if is_reducible(g):
        return EulerProductEstimate(0.0, P, 0, reducible=True)
    primes = odd_primes_upto(P)
    nu = _local_nu(g, P)
    if np.any(nu >= primes):
        return EulerProductEstimate(0.0, P, len(primes), vanished=True)
    p = primes.astype(np.float64)
    return _product(np.log1p((1.0 - nu) / (p - 1.0)), P)


@lru_cache(maxsize=8192)
def c_constant(f: PairFamily, P: int = DEFAULT_TRUNCATION) -> EulerProductEstimate:
    """Truncated product of (p/(p-1))**2 (p - N(p))/p over odd p <= P."""
    _check_bound(P)
    if is_reducible(f.second):
        return EulerProductEstimate(0.0, P, 0, reducible=True)
    primes = odd_primes_upto(P)
    big_n = _local_nu(f.second, P) + ((f.two_r % primes) != 0)
    if np.any(big_n >= primes):
        return EulerProductEstimate(0.0, P, len(primes), vanished=True)
    p = primes.astype(np.float64)
    # p(p-N)/(p-1)^2 = 1 + ((2-N)p - 1)/(p-1)^2
    return _product(np.log1p(((2.0 - big_n) * p - 1.0) / (p - 1.0) ** 2), P)


def c_over_gamma(f: PairFamily, P: int = DEFAULT_TRUNCATION) -> float:
    """Ratio C/gamma computed directly from its own (absolutely convergent) product."""
    if gamma_constant(f.second, P).value == 0:
        raise UndefinedRatioError(f"gamma vanishes for k={f.k}, q={f.two_r}")
    primes = odd_primes_upto(P)
    nu = _local_nu(f.second, P)
    p = primes.astype(np.float64)
    divides = (f.two_r % primes) == 0
    if np.any(~divides & (nu + 1 >= primes)):
        return 0.0
    # p | 2r: p/(p-1);  otherwise 1 - nu/((p-1)(p-nu))
    terms = np.where(divides, 1.0 / (p - 1.0), -nu / ((p - 1.0) * (p - nu)))
    return math.exp(math.fsum(np.log1p(terms).tolist()))


def bh_constant(f: PairFamily, P: int = DEFAULT_TRUNCATION) -> float:
    """Bateman-Horn constant (2/k) C for the pair {n, n**k + 2r}."""
    return 2.0 / f.k * c_constant(f, P).value
