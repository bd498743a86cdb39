import math

import numpy as np
from hypothesis import given, settings, strategies as st

from spinmono import frames
from spinmono.fields import basis_spinor
from spinmono.numerics import SphereGrid

cplx = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


@given(st.lists(cplx, min_size=4, max_size=4).filter(lambda k: abs(np.linalg.det(frames.matrix_from_kvec(k))) > 1e-2))
@settings(max_examples=60)
def test_lorentz_preserves_eta(kvec):
    L = frames.sl2c_to_lorentz(kvec)
    assert np.max(np.abs(L.T @ frames.ETA @ L - frames.ETA)) < 1e-8 * max(1.0, np.max(np.abs(L)) ** 2)


def test_group_homomorphism_and_sign():
    rng = np.random.default_rng(0)
    for _ in range(20):
        k1, k2 = (rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(2))
        B1, B2 = frames.matrix_from_kvec(k1), frames.matrix_from_kvec(k2)
        B1, B2 = B1 / np.sqrt(np.linalg.det(B1)), B2 / np.sqrt(np.linalg.det(B2))
        L12 = frames.sl2c_to_lorentz(frames.kvec_from_matrix(B1 @ B2))
        L1 = frames.sl2c_to_lorentz(frames.kvec_from_matrix(B1))
        L2 = frames.sl2c_to_lorentz(frames.kvec_from_matrix(B2))
        assert np.allclose(L12, L1 @ L2, atol=1e-9)
        assert np.allclose(frames.sl2c_to_lorentz(-frames.kvec_from_matrix(B1)), L1)


def test_rotation_about_z():
    a = 0.7
    B = np.diag([np.exp(-0.5j * a), np.exp(0.5j * a)])
    L = frames.sl2c_to_lorentz(frames.kvec_from_matrix(B))
    R = L[1:3, 1:3]
    assert abs(L[0, 0] - 1) < 1e-14 and abs(L[3, 3] - 1) < 1e-14
    assert np.allclose(R.T @ R, np.eye(2))
    assert abs(abs(R[0, 1]) - math.sin(a)) < 1e-14


def test_tetrad_mapping_both_signs():
    rng = np.random.default_rng(1)
    for _ in range(10):
        r, th, ph = rng.uniform(0.1, 4), rng.uniform(0.05, 3.09), rng.uniform(0, 6.28)
        for s in (1, -1):
            assert frames.tetrad_mapping_error(r, th, ph, s) < 1e-12


def test_helicity_spinors_are_sigma_n_eigenvectors():
    th, ph = 1.1, 2.3
    n = np.array([math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)])
    sn = n[0] * np.array([[0, 1], [1, 0]]) + n[1] * np.array([[0, -1j], [1j, 0]]) + n[2] * np.diag([1, -1])
    cp, cm = frames.helicity_spinors(th, ph)
    assert np.allclose(sn @ cp, cp) and np.allclose(sn @ cm, -cm)
    B = frames.schrodinger_B(th, ph)
    assert np.allclose(np.linalg.inv(B), np.stack([cp, cm], axis=1))


def test_spherical_spinors_orthonormal():
    g = SphereGrid(24, 24)
    modes = [(j, m, b) for j in ("1/2", "3/2") for m in ("1/2", "-1/2") for b in "+-"]
    vals = [frames.omega_spinor(j, m, b, g.theta, g.phi) for j, m, b in modes]
    G = np.array([[g.inner(a, b) for b in vals] for a in vals])
    assert np.allclose(G, np.eye(len(vals)), atol=1e-12)


def test_weyl_pauli_round_trip():
    psi = basis_spinor("1/2", "1", "0", [0.2, 0.4j, 0.1, 0.3])
    g = SphereGrid(8, 8)
    back = frames.pauli_to_weyl(frames.weyl_to_pauli(psi))
    assert np.allclose(back.sample(g), psi.sample(g))
    cart = frames.to_cartesian(psi)
    B_inv = np.linalg.inv(frames.schrodinger_B(0.7, 0.4))
    ref = np.concatenate([B_inv @ psi.evaluate(0.7, 0.4)[:2], B_inv @ psi.evaluate(0.7, 0.4)[2:]])
    assert np.allclose(cart.evaluate(0.7, 0.4), ref)
