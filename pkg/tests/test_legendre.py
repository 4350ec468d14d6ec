import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sqthermal.core import DomainError
from sqthermal.legendre import (
    convergence_radius,
    genfun_coefficients,
    legendre_p,
    scaled_sequence,
)

from mp_oracles import maclaurin


def test_p0_is_one():
    assert legendre_p(0, 0.7) == 1.0


@pytest.mark.parametrize("m", [0, 1, 2, 5, 17, 60])
def test_p_at_one(m):
    assert legendre_p(m, 1.0) == pytest.approx(1.0, rel=1e-13)


def test_p3_at_two():
    # (5 x^3 - 3 x) / 2 at x = 2
    assert legendre_p(3, 2.0) == 17.0


def test_low_orders_exact():
    assert legendre_p(1, 0.37) == 0.37


@settings(max_examples=100)
@given(st.integers(0, 60), st.floats(-3, 3))
def test_legendre_matches_mpmath(m, x):
    ref = float(mp.legendre(m, x))
    scale = max(1.0, abs(ref)) if abs(x) > 1 else 1.0
    assert abs(legendre_p(m, x) - ref) <= 1e-12 * scale


def test_bonnet_residual():
    xs = np.linspace(-3, 3, 61)
    for x in xs:
        vals = [legendre_p(k, x) for k in range(102)]
        for m in range(1, 101):
            res = (m + 1) * vals[m + 1] - (2 * m + 1) * x * vals[m] + m * vals[m - 1]
            assert abs(res) < 1e-12 * max(1.0, abs(vals[m]))


def test_legendre_rejects_nonfinite():
    with pytest.raises(DomainError):
        legendre_p(2, math.nan)


def test_sequence_trivial():
    assert scaled_sequence(0.3, -2.0, 0).values.tolist() == [1.0]


def test_sequence_perfect_square():
    assert scaled_sequence(3, 9, 3).values.tolist() == [1.0, 3.0, 9.0, 27.0]


def test_sequence_negative_q():
    # W_2 = (3 p^2 - q) / 2
    assert scaled_sequence(0.5, -1.0, 2).values.tolist() == [1.0, 0.5, 0.875]


def test_sequence_recurrence_invariant():
    seq = scaled_sequence(0.7, -0.4, 40).values
    for k in range(1, 40):
        lhs = (k + 1) * seq[k + 1]
        rhs = (2 * k + 1) * 0.7 * seq[k] + k * 0.4 * seq[k - 1]
        assert lhs == pytest.approx(rhs, rel=1e-13)


def test_scaled_matches_legendre_random():
    rng = np.random.default_rng(7)
    for _ in range(500):
        p, q, k = rng.uniform(-3, 3), rng.uniform(0.01, 9), int(rng.integers(0, 51))
        w = scaled_sequence(p, q, k).values[k]
        ref = q ** (k / 2) * legendre_p(k, p / math.sqrt(q))
        # |P_k| <= 1 inside [-1, 1], so q^(k/2) is the natural scale there
        scale = max(abs(ref), q ** (k / 2))
        assert abs(w - ref) <= 1e-10 * scale


@settings(max_examples=60, deadline=None)
@given(st.floats(-4, 4), st.floats(-8, 8))
def test_sequence_matches_cauchy_product(p, q):
    ref = maclaurin(p, q, 30)
    seq = scaled_sequence(p, q, 30).values
    lam = abs(p) + math.sqrt(max(p * p - q, 0.0)) if p * p >= q else math.sqrt(q)
    for k in range(31):
        assert abs(seq[k] - float(ref[k])) <= 1e-11 * max(abs(float(ref[k])), max(lam, 1) ** k)


def test_exponent_shift_keeps_large_sequences_finite():
    seq = scaled_sequence(3.0, 1.0, 3000)
    assert np.all(np.isfinite(seq.mantissa))
    assert seq.exponent[-1] > 0
    # W_k = P_k(3); compare the log against the leading asymptotic
    ref = mp.log(mp.legendre(3000, 3))
    assert seq.log_abs(3000) == pytest.approx(float(ref), rel=1e-12)


def test_exponent_shift_on_decay():
    seq = scaled_sequence(0.01, 0.0001, 2500)
    assert seq.exponent[-1] < 0
    # q = p^2 gives W_k = p^k exactly
    assert seq.log_abs(2500) == pytest.approx(2500 * math.log(0.01), rel=1e-12)


def test_parity_zeros_exact():
    vals = scaled_sequence(0.0, -0.3, 21).values
    assert np.all(vals[1::2] == 0.0)


def test_genfun_trivial():
    assert genfun_coefficients(0, 0, 0.5, 0) == 1.0


def test_genfun_perfect_square():
    assert genfun_coefficients(1, 1, 0.5, 200) == pytest.approx(2.0, abs=1e-12)


def test_genfun_derived_value():
    assert abs(genfun_coefficients(0.5, 0.25, 0.4, 60) - 1.25) < 1e-10


def test_genfun_domain_errors():
    with pytest.raises(DomainError):
        genfun_coefficients(1.0, 0.0, 0.6, 10)
    with pytest.raises(DomainError):
        genfun_coefficients(0.0, -4.0, 0.6, 10)


@settings(max_examples=200, deadline=None)
@given(st.floats(-3, 3), st.floats(-9, 9), st.floats(-0.5, 0.5))
def test_genfun_convergence(p, q, s):
    t = s * min(1.0, convergence_radius(p, q))
    base = 1 - 2 * p * t + q * t * t
    assume(base > 0)
    exact = base**-0.5
    errs = [abs(genfun_coefficients(p, q, t, K) - exact) for K in (50, 100, 200)]
    assert errs[-1] < 1e-8
    # checkpoints shrink until they hit the roundoff floor
    assert errs[1] <= errs[0] + 1e-14 and errs[2] <= errs[1] + 1e-14
