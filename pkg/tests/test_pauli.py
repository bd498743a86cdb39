from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinmono import pauli, wigner
from spinmono.numerics import HalfInt, SphereGrid


def test_verdict_reasons():
    assert pauli.is_allowed("1/2", "3/2").reason == pauli.OK
    assert pauli.is_allowed("1/2", "1").reason == pauli.EXPONENTS_NOT_NONNEG_INTEGERS
    assert pauli.is_allowed("2", "1").reason == pauli.EXPONENTS_NOT_NONNEG_INTEGERS
    assert pauli.is_allowed("1/3", "1").reason == pauli.LAMBDA_NOT_HALF_INTEGER
    with pytest.raises(ValueError):
        pauli.is_allowed("0", "-1")


@given(st.integers(-8, 8), st.integers(0, 12))
def test_closed_form_matches_derivative_oracle(l2, j2):
    v = pauli.is_allowed(HalfInt(l2), HalfInt(j2))
    assert v.allowed == v.derivative_is_zero
    assert v.allowed == (j2 >= abs(l2) and (j2 - l2) % 2 == 0)


def test_allowed_j_starts_at_abs_lambda():
    assert pauli.allowed_j("-3/2", 3) == [HalfInt(3), HalfInt(5), HalfInt(7)]
    with pytest.raises(ValueError):
        pauli.allowed_j(0, 0)


@pytest.mark.parametrize("k,jmin", [("0", "1/2"), ("1/2", "0"), ("-1/2", "0"), ("1", "1/2"), ("-5/2", "2"), ("5", "9/2")])
def test_spinor_quantization(k, jmin):
    valid, j_min, js = pauli.spinor_quantization(k, count=4)
    assert valid
    assert j_min == HalfInt(round(2 * float(Fraction(jmin))))
    assert [b.twice - a.twice for a, b in zip(js, js[1:])] == [2, 2, 2]


def test_spinor_doublet_shares_j():
    # both lam = k - 1/2 and k + 1/2 are allowed at j >= |k| + 1/2; only one survives at j_min
    for k2 in range(-6, 7):
        k = HalfInt(k2)
        q = pauli.spinor_quantization(k, count=3)
        for j in q.j_list[1:]:
            assert pauli.is_allowed(k - HalfInt(1), j).allowed and pauli.is_allowed(k + HalfInt(1), j).allowed
        if k2:
            both = [pauli.is_allowed(k + HalfInt(s), q.j_min).allowed for s in (-1, 1)]
            assert sorted(both) == [False, True]


def test_annihilation_split():
    g = SphereGrid(32, 32)
    for lam, j in (("0", "0"), ("1/2", "3/2"), ("-1", "2"), ("3/2", "3/2")):
        assert pauli.annihilation_residual(lam, j, g) < 1e-8
    for lam, j in (("1/2", "1"), ("2", "1"), ("-1/2", "0")):
        assert pauli.annihilation_residual(lam, j, g) > 1e-3


def test_formal_lowest_is_proportional_to_phi():
    g = SphereGrid(12, 12)
    for lam, j in (("1/2", "3/2"), ("-1", "2"), ("0", "1")):
        phase, f = pauli.formal_lowest(lam, j)
        vals = np.exp(1j * float(phase) * g.phi) * f(g.theta)
        ref = wigner.phi_jm(lam, j, -HalfInt(round(2 * float(Fraction(j)))), g.theta, g.phi)
        ratio = vals / ref
        assert np.max(np.abs(ratio - ratio.flat[0])) < 1e-10
