import numpy as np

from spinmono import currents, radial
from spinmono.harmonics import MonopoleMode
from spinmono.numerics import SphereGrid

G = SphereGrid(32, 32)
F = (0.6 + 0.2j, 0.3j, 0.4, 0.1 - 0.5j)


def test_gamma_bilinears_match_closed_formulas():
    for k, j, m in (("0", "1/2", "1/2"), ("1/2", "1", "0"), ("-1", "5/2", "-3/2"), ("3/2", "1", "1")):
        mode = MonopoleMode(k, j, m, F)
        for metric, r in ((radial.FLAT, 1.3), (radial.SPHERICAL, 0.5), (radial.LOBACHEVSKI, 2.0)):
            a = currents.current_of_mode(mode, G.theta_nodes, 0.4, metric, r).as_array()
            b = currents.current_bilinear_formulas(mode, G.theta_nodes, metric, r).as_array()
            assert np.max(np.abs(a - b)) < 1e-13


def test_selection_rules():
    for delta in (1, -1):
        J = currents.current_of_mode(MonopoleMode("1", "5/2", "1/2", F, delta=delta), G.theta, G.phi)
        assert np.max(np.abs(J.Jtheta)) < 1e-12
    J = currents.current_of_mode(MonopoleMode("-3/2", "1", "0", F), G.theta, G.phi)
    assert np.max(np.abs(J.Jphi)) < 1e-12
    J = currents.current_of_mode(MonopoleMode("1", "3/2", "1/2", F), G.theta, G.phi)
    assert np.max(np.abs(J.Jphi)) > 1e-3


def test_current_is_gauge_invariant_and_phi_independent():
    mode = MonopoleMode("1/2", "2", "1", F)
    base = currents.current_of_mode(mode, G.theta, G.phi).as_array()
    for g in ("D", "WY_S"):
        assert np.allclose(currents.current_of_mode(mode, G.theta, G.phi, gauge=g).as_array(), base, atol=1e-14)
    assert np.allclose(base, base[:, :, :1])


def test_total_charge():
    for k, j, m in (("0", "3/2", "1/2"), ("1/2", "0", "0"), ("-1", "7/2", "5/2")):
        mode = MonopoleMode(k, j, m, F)
        assert abs(currents.total_charge(mode, G) - currents.expected_charge(mode)) < 1e-12
