"""Local root counts of n**k + q modulo primes.

For a prime p not dividing q, the congruence n**k = -q (mod p) has either
gcd(k, p - 1) roots or none, depending on whether -q is a gcd(k, p-1)-th
power residue. That criterion drives both the scalar and the vectorised
counters below; the O(p) loop is kept as an independent check.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .primes import is_prime, jacobi_symbol, pow_mod, pow_mod_array, sieve_primes


@dataclass(frozen=True)
class OffsetPolynomial:
    """The polynomial n**k + q."""

    k: int
    q: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"degree must be >= 1, got {self.k}")
        if self.q == 0:
            raise ValueError("offset q must be nonzero")


@dataclass(frozen=True)
class PairFamily:
    """The pair {n, n**k + two_r}."""

    k: int
    two_r: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"degree must be >= 1, got {self.k}")
        if self.two_r == 0 or self.two_r % 2:
            raise ValueError(f"two_r must be a nonzero even integer, got {self.two_r}")

    @property
    def degrees(self) -> tuple[int, int]:
        return (1, self.k)

    @property
    def second(self) -> OffsetPolynomial:
        return OffsetPolynomial(self.k, self.two_r)


@dataclass(frozen=True)
class LocalData:
    p: int
    nu: int
    big_n: int


class CubicClass(enum.Enum):
    ONE_PRIME = 1
    ZERO_PRIME = 0
    THREE_PRIME = 3


def _require_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def legendre_symbol(a: int, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    return jacobi_symbol(a, p)


def nu_count_bruteforce(g: OffsetPolynomial, p: int) -> int:
    """Count roots of n**k + q mod p by trying every residue."""
    return sum(1 for n in range(1, p + 1) if (pow(n, g.k, p) + g.q) % p == 0)


def nu_count(g: OffsetPolynomial, p: int) -> int:
    """#{1 <= n <= p : n**k + q = 0 (mod p)}."""
    _require_prime(p)
    k, q = g.k, g.q
    if q % p == 0:
        return 1
    if k == 2 and p > 2:
        return 1 + jacobi_symbol(-q, p)
    if k == 3 and p % 3 == 2:
        return 1
    d = math.gcd(k, p - 1)
    return d if pow_mod(-q, (p - 1) // d, p) == 1 else 0


def big_n_count(f: PairFamily, p: int) -> int:
    """#{1 <= n <= p : n (n**k + 2r) = 0 (mod p)}."""
    nu = nu_count(f.second, p)
    return nu if f.two_r % p == 0 else nu + 1


def local_data(f: PairFamily, p: int) -> LocalData:
    nu = nu_count(f.second, p)
    return LocalData(p, nu, nu if f.two_r % p == 0 else nu + 1)


def nu_counts(g: OffsetPolynomial, primes: np.ndarray) -> np.ndarray:
    """Vectorised :func:`nu_count` over an int64 array of primes."""
    primes = np.asarray(primes, dtype=np.int64)
    divides = (g.q % primes) == 0
    d = np.gcd(g.k, primes - 1)
    residue = pow_mod_array((-g.q) % primes, (primes - 1) // d, primes)
    nu = np.where(residue == 1, d, 0)
    nu[divides] = 1
    return nu


def big_n_counts(f: PairFamily, primes: np.ndarray) -> np.ndarray:
    primes = np.asarray(primes, dtype=np.int64)
    nu = nu_counts(f.second, primes)
    return nu + ((f.two_r % primes) != 0)


def cubic_class(q: int, p: int) -> CubicClass:
    """Classify p by the number of roots of n**3 = q (mod p).

    Primes dividing q have the single root 0 and are reported as ONE_PRIME.
    """
    _require_prime(p)
    if q % p == 0 or p == 3 or p % 3 == 2:
        return CubicClass.ONE_PRIME
    return _classify(q, p)


@lru_cache(maxsize=1 << 16)
def _classify(q: int, p: int) -> CubicClass:
    if pow_mod(q % p, (p - 1) // 3, p) == 1:
        return CubicClass.THREE_PRIME
    return CubicClass.ZERO_PRIME


def cubic_classify(q: int, p: int) -> CubicClass:
    """ZERO_PRIME or THREE_PRIME for a prime p = 1 (mod 3) not dividing q."""
    if q == 0:
        raise ValueError("q must be nonzero")
    if p % 3 != 1 or not is_prime(p):
        raise ValueError(f"p must be a prime congruent to 1 mod 3, got {p}")
    if q % p == 0:
        raise ValueError(f"p={p} divides q={q}")
    return _classify(q, p)


def three_primes_below(q: int, bound: int) -> list[int]:
    """Primes p < bound, p = 1 (mod 3), p not dividing q, where q is a cube mod p."""
    if q == 0:
        raise ValueError("q must be nonzero")
    if bound < 7:
        raise ValueError(f"bound must be >= 7, got {bound}")
    primes = sieve_primes(bound - 1).primes
    cand = primes[(primes % 3 == 1) & (q % primes != 0)]
    if len(cand) == 0:
        return []
    hit = pow_mod_array(q % cand, (cand - 1) // 3, cand) == 1
    return cand[hit].tolist()
