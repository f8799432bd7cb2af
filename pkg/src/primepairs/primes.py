"""Prime generation, primality testing and modular exponentiation.

The sieve is an odd-only segmented sieve of Eratosthenes on numpy boolean
buffers. Primality of single integers uses Miller-Rabin with witness sets
that are exact below 2**64, and a Baillie-PSW style test above that.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

SIEVE_MAX = 2**40
WIDE_BITS = 127
WIDE_MAX = 2**WIDE_BITS - 1
WIDE_MIN = -(2**WIDE_BITS)

# bytes per segment buffer; one byte per odd number
DEFAULT_SEGMENT_BYTES = 256 * 1024

# vectorised pow_mod needs (m - 1)**2 < 2**63
_ARRAY_MOD_LIMIT = 3_037_000_499


class RepresentationError(ValueError):
    """A pair member would not fit in the 128-bit signed range."""


def check_wide(value: int) -> int:
    if not WIDE_MIN <= value <= WIDE_MAX:
        raise RepresentationError(f"{value} does not fit in {WIDE_BITS + 1}-bit signed range")
    return value


def pair_member(p: int, k: int, two_r: int) -> int:
    """Return p**k + two_r, refusing values outside the wide-integer range."""
    return check_wide(p**k + two_r)


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __post_init__(self):
        self.primes.setflags(write=False)

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes.tolist())

    def __getitem__(self, i):
        return self.primes[i]

    def __contains__(self, n):
        i = np.searchsorted(self.primes, n)
        return bool(i < len(self.primes) and self.primes[i] == n)

    def tolist(self) -> list[int]:
        return self.primes.tolist()


def simple_sieve(limit: int) -> np.ndarray:
    """Plain (non-segmented) sieve of Eratosthenes, primes <= limit."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _check_limit(limit: int) -> int:
    if isinstance(limit, bool) or not isinstance(limit, (int, np.integer)):
        raise TypeError(f"sieve limit must be an integer, got {type(limit).__name__}")
    limit = int(limit)
    if limit < 0 or limit > SIEVE_MAX:
        raise ValueError(f"sieve limit must lie in [0, 2**40], got {limit}")
    return limit


def iter_prime_segments(
    lo: int, hi: int, segment_bytes: int = DEFAULT_SEGMENT_BYTES
) -> Iterator[np.ndarray]:
    """Yield int64 arrays of the primes in [lo, hi], in increasing order.

    Memory use is bounded by ``segment_bytes`` plus the base primes up to
    sqrt(hi), so ranges far beyond available RAM can be streamed.
    """
    hi = _check_limit(hi)
    lo = max(int(lo), 2)
    if hi < lo:
        return
    if segment_bytes < 1:
        raise ValueError("segment_bytes must be positive")
    if lo == 2:
        yield np.array([2], dtype=np.int64)
        lo = 3
    if lo % 2 == 0:
        lo += 1
    if lo > hi:
        return
    base = simple_sieve(math.isqrt(hi))[1:]  # odd base primes
    span = 2 * segment_bytes
    while lo <= hi:
        top = min(lo + span - 1, hi)  # inclusive
        n_odd = (top - lo) // 2 + 1
        mark = np.ones(n_odd, dtype=bool)
        for p in base.tolist():
            pp = p * p
            if pp > top:
                break
            start = max(pp, -(-lo // p) * p)
            if start % 2 == 0:
                start += p
            if start > top:
                continue
            mark[(start - lo) // 2 :: p] = False
        if lo == 1:
            mark[0] = False
        seg = lo + 2 * np.flatnonzero(mark).astype(np.int64)
        if len(seg):
            yield seg
        lo = top + 1 if top % 2 == 0 else top + 2


def sieve_primes(limit: int, segment_bytes: int = DEFAULT_SEGMENT_BYTES) -> PrimeTable:
    limit = _check_limit(limit)
    chunks = list(iter_prime_segments(2, limit, segment_bytes))
    primes = np.concatenate(chunks) if chunks else np.array([], dtype=np.int64)
    return PrimeTable(limit, primes)


def pow_mod(a: int, e: int, m: int) -> int:
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if e < 0:
        raise ValueError(f"exponent must be nonnegative, got {e}")
    return pow(a, e, m)


def pow_mod_array(base, exp, mod) -> np.ndarray:
    """Elementwise base**exp % mod for int64 arrays with mod < ~3.04e9."""
    base = np.asarray(base, dtype=np.int64)
    exp = np.array(exp, dtype=np.int64)
    mod = np.asarray(mod, dtype=np.int64)
    if mod.size and (mod.min() < 1 or mod.max() >= _ARRAY_MOD_LIMIT):
        raise ValueError("array moduli must lie in [1, 3037000499)")
    if exp.size and exp.min() < 0:
        raise ValueError("exponents must be nonnegative")
    base, exp, mod = np.broadcast_arrays(base % mod, exp, mod)
    b = base.copy()
    e = exp.copy()
    result = np.ones(b.shape, dtype=np.int64)
    while e.any():
        odd = (e & 1).astype(bool)
        result = np.where(odd, result * b % mod, result)
        b = b * b % mod
        e >>= 1
    return result % mod


# --- primality -------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)

# (bound, witnesses): witnesses give an exact answer for n < bound
_MR_TIERS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (2**64, (2, 325, 9375, 28178, 450775, 9780504, 1795265022)),
)


class Primality(NamedTuple):
    is_prime: bool
    deterministic: bool


def _strong_probable_prime(n: int, a: int) -> bool:
    a %= n
    if a == 0:
        return True
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = jacobi_symbol(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d = n + 1
    s = (d & -d).bit_length() - 1
    d >>= s

    def half(v):
        v %= n
        return (v + n if v & 1 else v) // 2

    # left-to-right binary ladder for U_d, V_d
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def primality(n: int) -> Primality:
    """Primality of ``n`` plus whether the answer is proven.

    Below 2**64 the Miller-Rabin witness sets are exact. Above, a strong
    base-2 test plus a strong Lucas test is used; no counterexample is known
    but none is ruled out either, so ``deterministic`` is False.
    """
    n = int(n)
    if n < 2:
        return Primality(False, True)
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return Primality(n == p, True)
    if n < 73 * 73:
        return Primality(True, True)
    for bound, witnesses in _MR_TIERS:
        if n < bound:
            return Primality(all(_strong_probable_prime(n, a) for a in witnesses), True)
    ok = _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)
    return Primality(ok, False)


def is_prime(n: int) -> bool:
    return primality(n).is_prime
