import math

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from primepairs.constants import (
    EulerProductEstimate,
    UndefinedRatioError,
    bh_constant,
    c_constant,
    c_over_gamma,
    gamma_constant,
    hl_constant,
    is_reducible,
    odd_primes_upto,
    twin_prime_constant,
)
from primepairs.primes import jacobi_symbol
from primepairs.residues import OffsetPolynomial, PairFamily

TWIN_PRIME_CONSTANT = 0.66016181584686957  # classical value of C_2


def gamma_via_l_function(q, disc, P=10**6):
    """gamma^2_q from L(1, chi) and an absolutely convergent correction.

    For p not dividing q, nu(p) - 1 = chi(p) with chi the Kronecker character
    of discriminant ``disc`` (even here, so chi(2) = 0). Then
    prod_{p>2} (1 - chi/(p-1)) = L(1,chi)^-1 * prod_{p>2} (1-chi/(p-1))/(1-chi/p).
    """
    period = abs(disc)
    table = [0 if n % 2 == 0 else jacobi_symbol(disc, n) for n in range(period)]
    L = float(mpmath.dirichlet(1, table))
    corr = 1.0
    for p in odd_primes_upto(P).tolist():
        chi = table[p % period]
        corr *= (1 - chi / (p - 1)) / (1 - chi / p)
    return corr / L


@pytest.mark.parametrize("q,disc", [(-2, 8), (2, -8), (-28, 28), (1, -4), (-6, 24), (6, -24)])
def test_gamma_quadratic_against_l_function(q, disc):
    oracle = gamma_via_l_function(q, disc)
    assert gamma_constant(OffsetPolynomial(2, q), 10**7).value == pytest.approx(oracle, abs=3e-4)


def test_l_function_oracle_sanity():
    # L(1, chi_8) = log(1 + sqrt 2)/sqrt 2
    table = [0, 1, 0, -1, 0, -1, 0, 1]
    assert float(mpmath.dirichlet(1, table)) == pytest.approx(math.log(1 + math.sqrt(2)) / math.sqrt(2))


def test_twin_prime_constant():
    assert twin_prime_constant(10**8).value == pytest.approx(TWIN_PRIME_CONSTANT, abs=1e-7)
    assert hl_constant(2, 10**8).value == pytest.approx(0.6601618, abs=5e-8)


def test_hl_examples():
    for P in (100, 10**4, 10**6):
        base = hl_constant(2, P).value
        assert hl_constant(12, P).value == 2 * base
        assert hl_constant(8, P).value == base
        assert hl_constant(-12, P).value == 2 * base


def test_hl_depends_only_on_odd_prime_divisors():
    P = 10**4
    groups = {}
    for r in range(1, 400):
        key = tuple(sorted({p for p in sympy.primefactors(r) if p > 2}))
        groups.setdefault(key, set()).add(hl_constant(2 * r, P).value)
    assert all(len(vals) == 1 for vals in groups.values())


def test_hl_stability():
    assert abs(hl_constant(2, 10**6).value - hl_constant(2, 10**7).value) < 1e-5


def test_hl_rejects_odd_offset():
    with pytest.raises(ValueError):
        hl_constant(3, 100)


@pytest.mark.parametrize(
    "k,q,expected",
    [(3, 8, True), (2, -4, True), (2, -2, False), (3, 1, True), (3, -1, True), (4, 4, True),
     (4, 64, True), (1, 5, False), (2, 4, False), (6, -8, True), (6, 27, True), (6, 9, False), (5, 32, True)],
)
def test_is_reducible_examples(k, q, expected):
    assert is_reducible(OffsetPolynomial(k, q)) is expected


def test_is_reducible_against_factorisation():
    x = sympy.Symbol("x")
    for k in range(1, 9):
        for q in range(-70, 71):
            if q == 0:
                continue
            _, factors = sympy.factor_list(x**k + q)
            reducible = len(factors) > 1 or factors[0][1] > 1
            assert is_reducible(OffsetPolynomial(k, q)) is reducible, (k, q)


def test_gamma_examples():
    g32 = gamma_constant(OffsetPolynomial(3, 2), 500).value
    assert 1.27 <= g32 <= 1.33
    assert gamma_constant(OffsetPolynomial(2, -2), 10**6).value == pytest.approx(1.85, abs=0.01)
    est = gamma_constant(OffsetPolynomial(3, 1), 10**4)
    assert est.value == 0 and est.reducible and not est.vanished


def test_c_examples():
    assert c_constant(PairFamily(2, -2), 10**7).value == pytest.approx(1.6916, abs=0.005)
    est = c_constant(PairFamily(2, 2), 3)
    assert est.value == 0 and est.vanished and not est.reducible
    assert c_constant(PairFamily(2, 12), 10**6).value == pytest.approx(1.522, abs=0.01)
    assert c_constant(PairFamily(3, 10), 500).value == pytest.approx(1.22, abs=0.03)


def test_c_zero_semantics_table_2():
    P = 10**4
    for r in range(-15, 16):
        if r == 0:
            continue
        est = c_constant(PairFamily(2, 2 * r), P)
        reducible = r < 0 and math.isqrt(-2 * r) ** 2 == -2 * r
        assert est.reducible is reducible
        assert est.vanished is (not reducible and r % 3 == 1)
        assert (est.value == 0) is (est.reducible or est.vanished)


def test_c_over_gamma_examples():
    P = 10**6
    assert c_over_gamma(PairFamily(2, -2), P) == pytest.approx(1.692 / 1.85, abs=0.01)
    ratio = c_over_gamma(PairFamily(2, -12), P)
    assert ratio == pytest.approx(1.976 / 1.38, abs=0.02)
    assert ratio == pytest.approx(
        c_constant(PairFamily(2, -12), P).value / gamma_constant(OffsetPolynomial(2, -12), P).value,
        rel=1e-9,
    )
    # N(3) = 3 for (p, p^2 + 2): the zero factor propagates
    assert c_over_gamma(PairFamily(2, 2), P) == 0.0
    with pytest.raises(UndefinedRatioError):
        c_over_gamma(PairFamily(2, -4), P)


@settings(max_examples=80, deadline=None)
@given(k=st.integers(1, 5), half=st.integers(-60, 60).filter(bool), P=st.sampled_from([100, 1000, 10**4]))
def test_product_consistency(k, half, P):
    f = PairFamily(k, 2 * half)
    g = gamma_constant(f.second, P)
    if g.value == 0:
        return
    c = c_constant(f, P).value
    assert c == pytest.approx(g.value * c_over_gamma(f, P), rel=1e-9, abs=1e-300)


@pytest.mark.parametrize("two_r", [2, 4, 6, -6, 30, 210, -2310])
def test_k1_matches_hardy_littlewood(two_r):
    for P in (100, 10**4, 10**6):
        assert c_constant(PairFamily(1, two_r), P).value == pytest.approx(hl_constant(two_r, P).value, rel=1e-9)


def test_bh_examples():
    assert bh_constant(PairFamily(2, -2), 10**7) == pytest.approx(1.6916, abs=0.005)
    assert bh_constant(PairFamily(1, 2), 10**8) == pytest.approx(1.3203, abs=1e-4)
    assert bh_constant(PairFamily(3, 2), 500) == pytest.approx(2 / 3 * 0.87, abs=0.02)


@settings(max_examples=60, deadline=None)
@given(k=st.integers(1, 6), q=st.integers(-500, 500).filter(bool))
def test_estimate_invariants(k, q):
    for est in (gamma_constant(OffsetPolynomial(k, q), 2000),
                c_constant(PairFamily(k, 2 * q), 2000)):
        assert isinstance(est, EulerProductEstimate)
        assert est.value >= 0
        if est.vanished or est.reducible:
            assert est.value == 0
        assert est.truncation_bound == 2000


def test_truncation_bound_validation():
    with pytest.raises(ValueError):
        gamma_constant(OffsetPolynomial(2, 1), 2)
    with pytest.raises(ValueError):
        c_constant(PairFamily(2, 2), 1)


def test_factors_used_counts_odd_primes():
    est = c_constant(PairFamily(2, -2), 100)
    assert est.factors_used == 24
    assert len(odd_primes_upto(100)) == 24
    assert np.all(odd_primes_upto(100) % 2 == 1)
