import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinmono import gauge, operators, radial
from spinmono.fields import basis_spinor
from spinmono.numerics import SphereGrid

G = SphereGrid(24, 24)


def test_potential_shifts_match_differences():
    th = math.pi / 2  # inside both patches
    for k in ("1/2", "1", "-3/2"):
        for src, dst in (("S", "D"), ("S", "WY_N"), ("S", "WY_S"), ("D", "S")):
            diff = float(gauge.potential(dst, 0.8, th) - gauge.potential(src, 0.8, th))
            assert abs(gauge.potential_shift(src, dst, k, 0.8) - diff) < 1e-12


def test_patch_regions():
    with pytest.raises(ValueError):
        gauge.potential("WY_N", 1.0, 2.5)
    with pytest.raises(ValueError):
        gauge.potential("WY_S", 1.0, 0.5)
    with pytest.raises(ValueError):
        gauge.potential("X", 1.0, 0.5)
    lo, hi = gauge.GaugePotential("WY_N", 1.0).region
    assert lo == 0 and hi > math.pi / 2
    # overlap: the two patches differ by the constant 2g
    th = np.linspace(math.pi / 2 - 0.1, math.pi / 2 + 0.1, 5)
    assert np.allclose(gauge.potential("WY_S", 0.8, th) - gauge.potential("WY_N", 0.8, th), 1.6)


@given(st.integers(-12, 12))
def test_wy_single_valued_for_half_integer_k(t):
    assert gauge.wy_single_valued(t / 2)


@given(st.floats(0.01, 5.0).filter(lambda x: abs(2 * x - round(2 * x)) > 1e-6))
def test_wy_not_single_valued_otherwise(x):
    assert not gauge.wy_single_valued(x)


def test_gauge_transform_round_trip_and_phase():
    psi = basis_spinor("1", "3/2", "1/2", [0.3, 0.2j, 0.5, 0.1])
    back = gauge.gauge_transform(gauge.gauge_transform(psi, "WY_S"), "S")
    assert np.allclose(back.sample(G), psi.sample(G))
    d = gauge.gauge_transform(psi, "D")
    assert np.allclose(d.sample(G), np.exp(1j * G.phi) * psi.sample(G))


def test_eigen_triples_invariant():
    for k in ("1/2", "-1/2", "1"):
        j = operators.j_min(k) + 2
        for delta in (1, -1):
            psi = basis_spinor(k, j, -j, [0.6, 0.3j, 0.3j * delta, 0.6 * delta])
            trips = [gauge.eigen_triple(gauge.gauge_transform(psi, g), G) for g in ("S", "D", "WY_N", "WY_S")]
            for t in trips:
                assert all(abs(a - b) < 1e-10 for a, b in zip(t, trips[0]))
            assert abs(trips[0][1] + delta * operators.sigma_nu(j, k)) < 1e-10


def test_operator_descriptors():
    assert gauge.transformed_operators("S").schrodinger_basis
    for g in ("D", "WY_N", "WY_S"):
        assert not gauge.transformed_operators(g).schrodinger_basis
    assert abs(gauge.n_phase("D", "1/2", 0.0) - np.exp(1j * math.pi / 2)) < 1e-15
    with pytest.raises(ValueError):
        gauge.transformed_operators("Q")


def test_maxwell():
    for p in radial.PROFILES.values():
        assert gauge.maxwell_residual(p, 0.8, np.linspace(0.2, 2.9, 5)) < 1e-12
    import mpmath as mp
    bad = gauge.maxwell_residual(radial.FLAT, 0.8, [0.7], a_phi=lambda th: 0.8 * mp.cos(th) ** 2)
    assert bad > 1e-3
