"""Tetrads and spin frames: SL(2,C) -> Lorentz, the Schrodinger matrix, helicity and spherical spinors."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .fields import SpinorField, Term
from .numerics import HalfInt, RationalPoly, as_half, minus_one_pow
from .wigner import ThetaFunction, big_D, index_valid

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
PAULI4 = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _levi_civita() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for p in itertools.permutations(range(4)):
        inversions = sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4))
        eps[p] = -1.0 if inversions % 2 else 1.0
    return eps


# eps^{a n m}_c with eps^{0123} = +1
_EPS_MIXED = np.einsum("anmd,dc->anmc", _levi_civita(), ETA)


def kvec_from_matrix(B: np.ndarray) -> np.ndarray:
    """k_a with B = sigma^a k_a, sigma^a = (I, sigma_1, sigma_2, sigma_3)."""
    return np.array([np.trace(s @ B) / 2 for s in PAULI4])


def matrix_from_kvec(k) -> np.ndarray:
    return sum(complex(ka) * s for ka, s in zip(k, PAULI4))


def sl2c_to_lorentz(kvec, normalize: bool = True) -> np.ndarray:
    """Real 4x4 L^a_b(k, k*) preserving eta; rows carry the upper index.

    Composition follows the group: L(B1 B2) = L(B1) L(B2), and L(-B) = L(B).
    """
    k = np.asarray(kvec, dtype=complex)
    det = np.linalg.det(matrix_from_kvec(k))
    if abs(det) < 1e-14:
        raise ValueError("B(k) is singular")
    if normalize:
        k = k / np.sqrt(det)
    elif abs(det - 1) > 1e-10:
        raise ValueError(f"det B(k) = {det}, expected 1")
    ku = ETA @ k
    kk = ku @ np.conj(k)
    L = (
        -np.eye(4) * kk
        + np.outer(np.conj(ku), k)
        + np.outer(ku, np.conj(k))
        + 1j * np.einsum("anmc,n,m->ac", _EPS_MIXED, k, np.conj(k))
    )
    L = L * np.array([1.0, -1.0, -1.0, -1.0])[None, :]
    if np.max(np.abs(L.imag)) > 1e-9:
        raise ArithmeticError("Lorentz matrix came out complex")
    return L.real


def schrodinger_B(theta, phi, sign: int = 1) -> np.ndarray:
    """Spin-frame matrix relating Cartesian and spherical tetrads (unitary, det 1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    ep, em = np.exp(0.5j * phi), np.exp(-0.5j * phi)
    return sign * np.array([[c * ep, s * em], [-s * ep, c * em]])


def cartesian_tetrad() -> np.ndarray:
    """Rows e_(a) with Cartesian coordinate components."""
    return np.eye(4)


def spherical_tetrad(r, theta) -> np.ndarray:
    """Rows e_(a) in (t, r, theta, phi) components: (1,0,0,0), (0,0,1/r,0), (0,0,0,1/(r sin)), (0,1,0,0)."""
    E = np.zeros((4, 4))
    E[0, 0] = 1.0
    E[1, 2] = 1.0 / r
    E[2, 3] = 1.0 / (r * math.sin(theta))
    E[3, 1] = 1.0
    return E


def spherical_to_cartesian_jacobian(r, theta, phi) -> np.ndarray:
    """J[alpha, beta'] = d x^alpha / d x'^beta for x' = (t, r, theta, phi)."""
    st, ct, sp, cp = math.sin(theta), math.cos(theta), math.sin(phi), math.cos(phi)
    J = np.zeros((4, 4))
    J[0, 0] = 1.0
    J[1:, 1] = (st * cp, st * sp, ct)
    J[1:, 2] = (r * ct * cp, r * ct * sp, -r * st)
    J[1:, 3] = (-r * st * sp, r * st * cp, 0.0)
    return J


def tetrad_mapping_error(r, theta, phi, sign: int = 1) -> float:
    """max |L(B) E_cart - E_sph| with the spherical tetrad pushed to Cartesian components."""
    L = sl2c_to_lorentz(kvec_from_matrix(schrodinger_B(theta, phi, sign)))
    E_sph = spherical_tetrad(r, theta) @ spherical_to_cartesian_jacobian(r, theta, phi).T
    return float(np.max(np.abs(L @ cartesian_tetrad() - E_sph)))


def helicity_spinors(theta, phi):
    """Columns of B^{-1}: chi_+ = (cos e^{-i phi/2}, sin e^{i phi/2}), chi_- = (-sin e^{-i phi/2}, cos e^{i phi/2})."""
    theta, phi = np.asarray(theta, float), np.asarray(phi, float)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    em, ep = np.exp(-0.5j * phi), np.exp(0.5j * phi)
    return np.stack([c * em, s * ep]), np.stack([-s * em, c * ep])


def omega_spinor(j, m, branch: str, theta, phi) -> np.ndarray:
    """Spherical spinor Omega^{j +/- 1/2}_{jm}; branch is '+' or '-'."""
    j, m = as_half(j), as_half(m)
    if j.is_integer() or abs(m.twice) > j.twice or not (j - m).is_integer():
        raise ValueError(f"invalid spherical spinor indices j={j}, m={m}")
    if branch not in ("+", "-"):
        raise ValueError("branch must be '+' or '-'")
    chi_p, chi_m = helicity_spinors(theta, phi)
    h = HalfInt(1)
    d_minus = big_D(j, -m, -h, phi, theta)
    d_plus = big_D(j, -m, h, phi, theta)
    sgn = 1 if branch == "+" else -1
    pref = minus_one_pow(m + h) * math.sqrt((2 * float(j) + 1) / (8 * math.pi))
    return pref * (sgn * chi_p * d_minus + chi_m * d_plus)


# helicity spinor entries as exact terms: (phase, alpha, beta) with overall 1/sqrt(2)
_CHI_TERMS = {
    # chi_+ = (cos(t/2) e^{-i p/2}, sin(t/2) e^{i p/2})
    "+": ((1, Fraction(-1, 2), 0, Fraction(1, 2)), (1, Fraction(1, 2), Fraction(1, 2), 0)),
    # chi_- = (-sin(t/2) e^{-i p/2}, cos(t/2) e^{i p/2})
    "-": ((-1, Fraction(-1, 2), Fraction(1, 2), 0), (1, Fraction(1, 2), 0, Fraction(1, 2))),
}


def _times_entry(terms, entry):
    sign, dphase, da, db = entry
    out = []
    for t in terms:
        F = t.theta.times_factors(da, db).with_overall(1 / math.sqrt(2))
        out.append(Term(t.coef * sign, t.phase + dphase, F))
    return tuple(out)


def to_cartesian(psi: SpinorField) -> SpinorField:
    """Apply diag(B^{-1}, B^{-1}): spherical-tetrad spinor to the Cartesian tetrad."""
    if psi.tetrad != "spherical" or psi.size != 4 or not psi.analytic:
        raise ValueError("expects a basis-built four-component field in the spherical tetrad")
    comps = []
    for block in (0, 2):
        up, down = psi.components[block], psi.components[block + 1]
        for row in (0, 1):
            comps.append(_times_entry(up, _CHI_TERMS["+"][row]) + _times_entry(down, _CHI_TERMS["-"][row]))
    from dataclasses import replace

    return replace(psi, components=tuple(comps), tetrad="cartesian")


def weyl_to_pauli(psi: SpinorField) -> SpinorField:
    """(xi, eta) -> ((xi + eta)/sqrt2, (xi - eta)/sqrt2)."""
    if psi.frame != "weyl":
        raise ValueError(f"expects a weyl-frame field, got {psi.frame}")
    r = 1 / math.sqrt(2)
    if psi.size == 4:
        M = r * np.array([[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, -1, 0], [0, 1, 0, -1]], dtype=complex)
    else:
        M = r * np.array([[1, 1], [1, -1]], dtype=complex)
    from dataclasses import replace

    out = psi.matrix(M)
    return replace(out, frame="pauli", labels=psi.labels)


def pauli_to_weyl(psi: SpinorField) -> SpinorField:
    if psi.frame != "pauli":
        raise ValueError(f"expects a pauli-frame field, got {psi.frame}")
    from dataclasses import replace

    tagged = replace(psi, frame="weyl")
    back = weyl_to_pauli(tagged)  # the map is its own inverse
    return replace(back, frame="weyl")
