import numpy as np
import pytest

from spinmono import operators as O
from spinmono.fields import basis_spinor, callable_spinor, random_spinor, valid_js
from spinmono.numerics import HalfInt, SphereGrid, as_half

G = SphereGrid(24, 24)
F = [0.3, 0.5j, 0.2 - 0.1j, 0.7]


@pytest.mark.parametrize("k,j,m", [("1/2", "1", "0"), ("-1", "3/2", "-1/2"), ("0", "5/2", "3/2"), ("3/2", "3", "-2")])
def test_ladder_and_J3(k, j, m):
    j, m = as_half(j), as_half(m)
    psi = basis_spinor(k, j, m, F)
    jf, mf = float(j), float(m)
    assert O.relative_residual(O.apply_J(3, psi).sample(G), mf * psi.sample(G)) < 1e-12
    for sign, step in (("+", 1), ("-", -1)):
        out = O.apply_J(sign, psi).sample(G)
        target = m + step
        if abs(target) > j:
            assert np.max(np.abs(out)) < 1e-12
            continue
        coef = np.sqrt((jf - step * mf) * (jf + step * mf + 1))
        ref = -coef * basis_spinor(k, j, target, F).sample(G)
        assert O.relative_residual(out, ref) < 1e-12


def test_casimir():
    for k in ("0", "1/2", "-3/2"):
        for j in valid_js(k, HalfInt(7)):
            psi = basis_spinor(k, j, j, F)
            assert O.relative_residual(O.casimir(psi).sample(G), float(j) * (float(j) + 1) * psi.sample(G)) < 1e-12


def test_finite_difference_path_agrees_with_exact():
    psi = basis_spinor("1/2", "2", "1", F)
    cb = callable_spinor([psi.component_callable(i) for i in range(4)], k="1/2")
    th = G.theta_nodes[3:-3]
    grid_th, grid_ph = np.meshgrid(th, G.phi[0], indexing="ij")
    for i in (1, 2, 3):
        a = O.apply_J(i, psi).evaluate(grid_th, grid_ph)
        b = O.apply_J(i, cb).evaluate(grid_th, grid_ph)
        assert np.max(np.abs(a - b)) < 1e-7


def test_commutators_with_gauge_shift():
    rng = np.random.default_rng(3)
    for gauge in ("S", "D", "WY_S"):
        psi = random_spinor("1", rng, gauge=gauge)
        assert max(O.commutator_residuals(psi, G)) < 1e-10


def test_sigma_and_K_eigenvalues():
    for k in ("0", "1/2", "-1", "3/2"):
        for j in valid_js(k, HalfInt(5)):
            if k != "0" and j == O.j_min(k):
                continue
            nu = O.sigma_nu(j, k)
            for delta in (1, -1):
                psi = basis_spinor(k, j, j, [0.6, 0.3j, 0.3j * delta, 0.6 * delta])
                res = O.apply_K(k, psi, G)
                assert abs(res.eigenvalue + delta * nu) < 1e-10
                assert O.apply_sigma(k, psi, G).residual < 1e-12


def test_free_nu():
    for j2 in range(1, 11, 2):
        assert O.sigma_nu(HalfInt(j2), 0) == j2 / 2 + 0.5


def test_jmin_annihilated():
    for k in ("1/2", "-3/2", "2"):
        j = O.j_min(k)
        psi = basis_spinor(k, j, -j, [1, 1, 1, 1])
        assert np.max(np.abs(O.apply_sigma(k, psi).field.sample(G))) == 0
        res = O.apply_parity("N", psi, G)
        assert res.eigenvalue is None and res.outside_state_space and res.verdict == "outside state space"


def test_parity_flip_examples():
    assert O.parity_flip_D("1/2", "1/2", "1/2") == (1j, HalfInt(-1))
    assert O.parity_flip_D("1", "0", "0") == (-1, HalfInt(0))


def test_parity_eigenvalues():
    for k in ("0", "1/2", "-1"):
        for j in valid_js(k, HalfInt(5))[1:]:
            for delta in (1, -1):
                psi = basis_spinor(k, j, j - 1, [0.6, 0.3j, 0.3j * delta, 0.6 * delta])
                N = O.apply_parity("N", psi, G).eigenvalue
                assert abs(N - delta * np.exp(1j * np.pi * (float(j) + 1))) < 1e-10
                if k == "0":
                    assert abs(O.apply_parity("Pi", psi, G).eigenvalue - N) < 1e-10


def test_parity_guards():
    psi = basis_spinor("1/2", "1", "0", F)
    with pytest.raises(ValueError):
        O.apply_parity("Pi", psi, G)
    with pytest.raises(ValueError):
        O.apply_parity("N", basis_spinor("1/2", "1", "0", F, gauge="D"), G)
    with pytest.raises(ValueError):
        O.apply_parity("X", psi, G)


def test_parity_flip_resampling():
    from spinmono.wigner import big_D

    th, ph = np.meshgrid(np.linspace(0.1, 3.0, 9), np.linspace(0, 6, 9), indexing="ij")
    for j2 in (1, 2, 3, 4):
        j = HalfInt(j2)
        for m in [-j + i for i in range(j2 + 1)]:
            for sig in [-j + i for i in range(j2 + 1)]:
                sign, new = O.parity_flip_D(j, m, sig)
                lhs = big_D(j, -m, sig, ph + np.pi, np.pi - th)
                rhs = sign * big_D(j, -m, new, ph, th)
                assert np.max(np.abs(lhs - rhs)) < 1e-10
