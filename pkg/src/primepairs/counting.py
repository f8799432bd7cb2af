"""Counting prime pairs (p, p**k + 2r) and the comparison integral li_m."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .primes import (
    DEFAULT_SEGMENT_BYTES,
    RepresentationError,
    WIDE_MAX,
    is_prime,
    iter_prime_segments,
    simple_sieve,
)
from .residues import PairFamily

# trial-division primes used to discard most candidates before Miller-Rabin
_TRIAL_PRIMES = simple_sieve(1000)
_TRIAL_SQUARE = 1000 * 1000
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CountRecord:
    x: int
    pair_count: int
    theta: float
    li2: float
    predicted: int
    ratio: float | None


def _check_range(f: PairFamily, x: int):
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    if x**f.k + abs(f.two_r) > WIDE_MAX:
        raise RepresentationError(
            f"p**{f.k} + {f.two_r} overflows 128-bit range for p up to {x}"
        )


def _pair_primes_in(f: PairFamily, primes: np.ndarray) -> np.ndarray:
    """The subset of ``primes`` for which p**k + 2r is prime."""
    if len(primes) == 0:
        return primes
    top = int(primes[-1]) ** f.k + abs(f.two_r)
    if top >= _INT64_SAFE:
        return np.array(
            [p for p in primes.tolist() if is_prime(p**f.k + f.two_r)], dtype=np.int64
        )
    vals = primes**f.k + f.two_r
    keep = vals > 1
    for ell in _TRIAL_PRIMES.tolist():
        keep &= (vals % ell != 0) | (vals == ell)
    cand = np.flatnonzero(keep)
    small = vals[cand] < _TRIAL_SQUARE
    out = cand[small].tolist()
    out.extend(i for i, v in zip(cand[~small].tolist(), vals[cand[~small]].tolist()) if is_prime(v))
    out.sort()
    return primes[np.asarray(out, dtype=np.int64)]


def pair_primes(f: PairFamily, lo: int, hi: int, segment_bytes: int = DEFAULT_SEGMENT_BYTES) -> np.ndarray:
    """Primes p in [lo, hi] with p**k + 2r prime."""
    _check_range(f, max(hi, 1))
    parts = [_pair_primes_in(f, seg) for seg in iter_prime_segments(lo, hi, segment_bytes)]
    return np.concatenate(parts) if parts else np.array([], dtype=np.int64)


def _split(x: int, parts: int) -> list[tuple[int, int]]:
    edges = np.linspace(1, x + 1, parts + 1).astype(np.int64).tolist()
    return [(a, b - 1) for a, b in zip(edges[:-1], edges[1:]) if b - 1 >= a]


def count_pairs(f: PairFamily, x: int, workers: int = 1, segments: int | None = None) -> int:
    """pi_{2r}^k(x): the number of primes p <= x with p**k + 2r prime.

    The range can be split into ``segments`` pieces handled by ``workers``
    threads; partial counts are summed in range order.
    """
    _check_range(f, x)
    pieces = _split(x, segments or workers)
    if workers <= 1:
        return sum(len(pair_primes(f, a, b)) for a, b in pieces)
    with ThreadPoolExecutor(workers) as pool:
        return sum(pool.map(lambda ab: len(pair_primes(f, *ab)), pieces))


def theta(f: PairFamily, x: int) -> float:
    """Sum of log(p)**2 over the primes p <= x counted by :func:`count_pairs`."""
    _check_range(f, x)
    ps = pair_primes(f, 1, x)
    return math.fsum((np.log(ps.astype(np.float64)) ** 2).tolist())


@lru_cache(maxsize=4)
def _gauss_legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def _panel(m: int, a: float, b: float, nodes, weights) -> float:
    # integrate e^u / u^m over [a, b] in u = log t
    half = 0.5 * (b - a)
    u = 0.5 * (a + b) + half * nodes
    return half * float(np.dot(weights, np.exp(u) / u**m))


def li(m: int, x: float, rtol: float = 1e-12) -> float:
    """The integral of dt / log(t)**m from 2 to x.

    Gauss-Legendre quadrature in the variable u = log t on unit-width
    panels, each refined by bisection until two rule orders agree.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if x < 2:
        raise ValueError(f"li needs x >= 2, got {x}")
    a, b = math.log(2.0), math.log(x)
    if b == a:
        return 0.0
    lo_rule, hi_rule = _gauss_legendre(10), _gauss_legendre(20)
    n_panels = max(1, math.ceil(b - a))
    edges = np.linspace(a, b, n_panels + 1).tolist()
    total = []
    stack = list(zip(edges[:-1], edges[1:]))
    while stack:
        s, e = stack.pop()
        coarse = _panel(m, s, e, *lo_rule)
        fine = _panel(m, s, e, *hi_rule)
        if abs(fine - coarse) <= rtol * abs(fine) or e - s < 1e-6:
            total.append(fine)
        else:
            mid = 0.5 * (s + e)
            stack += [(s, mid), (mid, e)]
    return math.fsum(total)


def table_report(f: PairFamily, xs, constant: float) -> list[CountRecord]:
    """Counts, predictions round(constant * li_2(x)) and ratios for each x.

    Counting is incremental over the ascending ``xs``, so the largest x
    dominates the cost.
    """
    xs = [int(x) for x in xs]
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise ValueError("xs must be ascending")
    records = []
    count, logsq, prev = 0, [], 0
    for x in xs:
        ps = pair_primes(f, prev + 1, x) if x > prev else np.array([], dtype=np.int64)
        count += len(ps)
        logsq.extend((np.log(ps.astype(np.float64)) ** 2).tolist())
        prev = max(prev, x)
        l2 = li(2, x) if x >= 2 else 0.0
        predicted = round(constant * l2)
        ratio = round(count / predicted, 3) if predicted > 0 else None
        records.append(CountRecord(x, count, math.fsum(logsq), l2, predicted, ratio))
    return records
