"""Mean-value experiments for prime-pair constants.

Windowed sums of the constants C^k_{2r}, the partial sums S_m of the
Hardy-Littlewood constants, subsequence means, the cubic sieving kernel
and the residual comparing kernel-weighted sums with the kernel area.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .constants import DEFAULT_TRUNCATION, c_constant, gamma_constant, twin_prime_constant
from .primes import simple_sieve
from .residues import OffsetPolynomial, PairFamily


def cubic_shape(v: float) -> float:
    v = abs(v)
    if v <= 0.5:
        return 1.0 - 6.0 * v * v + 6.0 * v**3
    if v <= 1.0:
        return 2.0 * (1.0 - v) ** 3
    return 0.0


@dataclass(frozen=True)
class SievingKernel:
    """E^lambda(nu) = shape(nu / lam), with shape supported on [-1, 1].

    ``area`` is the integral of shape over [0, 1] when known in closed form;
    otherwise :func:`kernel_area` falls back to quadrature.
    """

    lam: float = 1.0
    shape: Callable[[float], float] = cubic_shape
    area: float | None = 0.375

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")

    def __call__(self, nu: float) -> float:
        return self.shape(nu / self.lam)

    def with_lambda(self, lam: float) -> "SievingKernel":
        return SievingKernel(lam, self.shape, self.area)


def kernel_eval(kern: SievingKernel, nu: float) -> float:
    return kern(nu)


def kernel_area_quadrature(kern: SievingKernel) -> float:
    val, _ = integrate.quad(kern.shape, 0.0, 1.0, points=[0.5], epsabs=1e-13, epsrel=1e-13)
    return val


def kernel_area(kern: SievingKernel) -> float:
    if kern.area is not None:
        return kern.area
    return kernel_area_quadrature(kern)


@dataclass(frozen=True)
class MeanValueReport:
    k: int
    lam: float
    truncation_bound: int
    sum: float
    mean: float
    residual: float
    terms: int
    window: str = "both"


def window_offsets(lam: float, window: str = "both") -> list[int]:
    """Nonzero even 2r with |2r| <= lam, ordered by r (negatives first for 'both')."""
    top = int(math.floor(lam / 2))
    pos = [2 * r for r in range(1, top + 1)]
    if window == "positive":
        return pos
    if window == "both":
        return [-t for t in reversed(pos)] + pos
    raise ValueError(f"window must be 'both' or 'positive', got {window!r}")


def _c_values(k: int, offsets, P: int, constant_fn=None) -> list[float]:
    if constant_fn is None:
        return [c_constant(PairFamily(k, t), P).value for t in offsets]
    return [float(constant_fn(t)) for t in offsets]


def residual_R(
    k: int,
    lam: float,
    P: int = DEFAULT_TRUNCATION,
    kern: SievingKernel | None = None,
    constant_fn: Callable[[int], float] | None = None,
) -> float:
    """(1/k) [sum_{0<|2r|<=lam} E(2r/lam) C^k_{2r} - lam * A^E].

    This is k * sum E * BH/(2k) - (lam/k) * A^E with BH = (2/k) C.
    ``constant_fn`` replaces the computed constants (used for calibration).
    """
    if lam < 2:
        raise ValueError(f"lambda must be >= 2, got {lam}")
    kern = (kern or SievingKernel()).with_lambda(lam)
    offsets = window_offsets(lam)
    cs = _c_values(k, offsets, P, constant_fn)
    weighted = math.fsum(kern(t) * c for t, c in zip(offsets, cs))
    return (weighted - lam * kernel_area(kern)) / k


def mean_S(
    k: int,
    lam: float,
    P: int = DEFAULT_TRUNCATION,
    window: str = "both",
    constant_fn: Callable[[int], float] | None = None,
) -> MeanValueReport:
    """Sum of C^k_{2r} over the window and its mean.

    For ``window='both'`` the mean is sum/lam. For ``'positive'`` only
    r = 1..lam/2 enter and the mean is sum/(lam/2), the plain average.
    """
    if lam < 2:
        raise ValueError(f"lambda must be >= 2, got {lam}")
    offsets = window_offsets(lam, window)
    cs = _c_values(k, offsets, P, constant_fn)
    total = math.fsum(cs)
    mean = total / lam if window == "both" else total / (lam / 2)
    res = residual_R(k, lam, P, constant_fn=constant_fn)
    return MeanValueReport(k, lam, P, total, mean, res, len(offsets), window)


def mean_gamma(k: int, qs, P: int = DEFAULT_TRUNCATION) -> float:
    """Plain average of gamma^k_q over the offsets ``qs``."""
    qs = list(qs)
    return math.fsum(gamma_constant(OffsetPolynomial(k, q), P).value for q in qs) / len(qs)


# --- Hardy-Littlewood partial sums ----------------------------------------------


def hl_multipliers(n: int) -> np.ndarray:
    """a[r] = prod_{p | r, p > 2} (p-1)/(p-2) for 0 <= r <= n (a[0] unused)."""
    a = np.ones(n + 1, dtype=np.float64)
    for p in simple_sieve(n)[1:].tolist():
        a[p::p] *= (p - 1) / (p - 2)
    return a


def hl_partial_sum(m: int, P: int = DEFAULT_TRUNCATION) -> float:
    """S_m = sum_{r=1..m} C_{2r} with C_2 truncated at P."""
    c2 = twin_prime_constant(P).value
    return c2 * math.fsum(hl_multipliers(m)[1:].tolist())


def s_m_deviation(m: int, P: int = DEFAULT_TRUNCATION) -> float:
    """(S_m - m + log(m)/2) / log(m)**(2/3)."""
    if m < 10:
        raise ValueError(f"m must be >= 10, got {m}")
    logm = math.log(m)
    return (hl_partial_sum(m, P) - m + 0.5 * logm) / logm ** (2.0 / 3.0)


def subsequence_mean(h: int, count: int, P: int = DEFAULT_TRUNCATION) -> float:
    """Average of C_{2hr} over r = 1..count."""
    if h < 1 or count < 1:
        raise ValueError("h and count must be positive")
    a = hl_multipliers(h * count)
    c2 = twin_prime_constant(P).value
    return c2 * math.fsum(a[h :: h].tolist()) / count
