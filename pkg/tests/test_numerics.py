import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinmono.numerics import (HalfInt, RationalPoly, SphereGrid, as_half, expand_binomial_product, fd_derivative,
                               gauss_legendre, half_from, minus_one_pow)


def test_halfint_parsing():
    assert as_half("3/2") == HalfInt(3)
    assert as_half("-1") == HalfInt(-2)
    assert as_half(Fraction(5, 2)).twice == 5
    assert half_from(3, 2) == HalfInt(3)
    for bad in ("0.5", "1/3", "x", 0.3):
        with pytest.raises(ValueError):
            as_half(bad)
    with pytest.raises(TypeError):
        as_half(True)


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_halfint_arithmetic(a, b):
    x, y = HalfInt(a), HalfInt(b)
    assert (x + y).twice == a + b
    assert (x - y).twice == a - b
    assert float(-x) == -a / 2
    assert (x < y) == (a < b)
    assert x.is_integer() == (a % 2 == 0)
    assert as_half(str(x)) == x


@given(st.integers(-20, 20))
def test_minus_one_pow_is_exp_i_pi(t):
    assert abs(minus_one_pow(HalfInt(t)) - np.exp(1j * math.pi * t / 2)) < 1e-12


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=8), st.integers(0, 4))
def test_poly_derivative_matches_numpy(coeffs, order):
    p = RationalPoly(coeffs)
    ref = np.polynomial.polynomial.polyder(np.array(coeffs, float), order) if order < len(coeffs) else [0.0]
    xs = np.linspace(-1, 1, 7)
    assert np.allclose(p.derivative(order)(xs), np.polynomial.polynomial.polyval(xs, ref))


@given(st.integers(0, 7), st.integers(0, 7))
def test_binomial_product(a, b):
    c = np.linspace(-1, 1, 9)
    assert np.allclose(expand_binomial_product(a, b)(c), (1 + c) ** a * (1 - c) ** b)


def test_binomial_product_derivative_vanishes_at_degree_plus_one():
    p = expand_binomial_product(3, 2)
    assert p.degree == 5
    assert p.derivative(6).is_zero()
    assert not p.derivative(5).is_zero()


@pytest.mark.parametrize("n", [2, 5, 12])
def test_gauss_legendre_exact_degree(n):
    nodes = gauss_legendre(n)
    for deg in range(2 * n):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert abs(sum(w * x ** deg for x, w in nodes) - exact) < 1e-13


def test_sphere_grid_integrals():
    g = SphereGrid(16, 16)
    assert abs(g.integrate(np.ones(g.shape)) - 4 * math.pi) < 1e-12
    y10 = math.sqrt(3 / (4 * math.pi)) * np.cos(g.theta)
    assert abs(g.integrate(y10 * y10) - 1) < 1e-13
    assert abs(g.integrate(y10 * np.exp(1j * g.phi))) < 1e-14
    assert np.all(np.diff(np.cos(g.theta_nodes)) > 0)


def test_fd_derivative_accuracy():
    x = np.linspace(0.3, 2.0, 5)
    assert np.max(np.abs(fd_derivative(np.sin, x) - np.cos(x))) < 1e-12
