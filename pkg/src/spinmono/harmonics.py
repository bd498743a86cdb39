"""Electron-monopole wave functions and spinor monopole harmonics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fields import SpinorField, basis_spinor
from .frames import helicity_spinors, to_cartesian, weyl_to_pauli
from .numerics import HalfInt, as_half, minus_one_pow
from .operators import j_min
from .wigner import big_D, index_valid, little_d

H = HalfInt(1)


@dataclass(frozen=True)
class MonopoleMode:
    """Quantum numbers (j, m), charge product k, and the four radial amplitudes at a point.

    With delta set, the amplitudes obey f3 = delta f2 and f4 = delta f1. At
    j = j_min only the components carrying an existing D-function are kept.
    """

    k: HalfInt
    j: HalfInt
    m: HalfInt
    f: tuple = (1.0, 0.0, 0.0, 0.0)
    delta: int | None = None
    labels: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        k, j, m = as_half(self.k), as_half(self.j), as_half(self.m)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "m", m)
        if j < j_min(k):
            raise ValueError(f"j = {j} is below j_min = {j_min(k)} for k = {k}")
        if not (j - k - H).is_integer():
            raise ValueError(f"j - k - 1/2 must be an integer (j={j}, k={k})")
        if abs(m.twice) > j.twice or not (j - m).is_integer():
            raise ValueError(f"invalid m = {m} for j = {j}")
        f = [complex(x) for x in self.f]
        if len(f) != 4:
            raise ValueError("need four amplitudes")
        if self.delta is not None:
            if self.delta not in (1, -1):
                raise ValueError("delta must be +1 or -1")
            f[2], f[3] = self.delta * f[1], self.delta * f[0]
        sig = (k - H, k + H, k - H, k + H)
        f = [c if index_valid(j, -m, s) else 0j for c, s in zip(f, sig)]
        object.__setattr__(self, "f", tuple(f))

    @property
    def is_jmin(self) -> bool:
        return self.k.twice != 0 and self.j == j_min(self.k)

    def field(self, gauge: str = "S") -> SpinorField:
        return basis_spinor(self.k, self.j, self.m, self.f, gauge)


def build_psi(mode: MonopoleMode, theta, phi) -> np.ndarray:
    """Angular spinor column (f1 D_{k-1/2}, f2 D_{k+1/2}, f3 D_{k-1/2}, f4 D_{k+1/2})."""
    return mode.field().evaluate(theta, phi)


def _D(j, m, sigma, theta, phi):
    if not index_valid(j, -m, sigma):
        return np.zeros(np.broadcast(np.asarray(theta), np.asarray(phi)).shape, dtype=complex)
    return big_D(j, -m, sigma, phi, theta)


def xi_norm(j) -> float:
    """Factor making xi^(1,2) unit-normalized on the sphere."""
    return math.sqrt((2 * float(as_half(j)) + 1) / (8 * math.pi))


def xi_harmonic(which: int, j, m, k, theta, phi, normalize: bool = False) -> np.ndarray:
    """xi^(1) = chi_- D_{k+1/2} + chi_+ D_{k-1/2}, xi^(2) = chi_- D_{k+1/2} - chi_+ D_{k-1/2}."""
    j, m, k = as_half(j), as_half(m), as_half(k)
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    if j < abs(k) + H:
        raise ValueError(f"j = {j} < |k| + 1/2: only one D-function exists; use jmin_assembly")
    chi_p, chi_m = helicity_spinors(theta, phi)
    sgn = 1 if which == 1 else -1
    out = chi_m * _D(j, m, k + H, theta, phi) + sgn * chi_p * _D(j, m, k - H, theta, phi)
    return out * xi_norm(j) if normalize else out


def xi_explicit(which: int, j, m, k, theta, phi) -> np.ndarray:
    """Same harmonics written entrywise from the half-angle columns and d-functions."""
    j, m, k = as_half(j), as_half(m), as_half(k)
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    em, ep = np.exp(-0.5j * phi), np.exp(0.5j * phi)
    ph = np.exp(1j * float(m) * phi)
    dp = little_d(j, -m, k + H)(theta)
    dm = little_d(j, -m, k - H)(theta)
    sgn = 1 if which == 1 else -1
    return ph * np.stack([-s * em, c * ep]) * dp + sgn * ph * np.stack([c * em, s * ep]) * dm


def jmin_assembly(k, f_pair, m, theta, phi) -> np.ndarray:
    """Pauli-frame Cartesian spinor of the j = |k| - 1/2 state.

    k > 0: ((f1 + f3) chi_+, (f1 - f3) chi_+) D_{k-1/2} / sqrt2 with f_pair = (f1, f3);
    k < 0: ((f2 + f4) chi_-, (f2 - f4) chi_-) D_{k+1/2} / sqrt2 with f_pair = (f2, f4).
    """
    k, m = as_half(k), as_half(m)
    if k.twice == 0:
        raise ValueError("k = 0 has no j_min state of this kind")
    j = abs(k) - H
    a, b = (complex(x) for x in f_pair)
    chi_p, chi_m = helicity_spinors(theta, phi)
    if k.twice > 0:
        chi, D = chi_p, _D(j, m, k - H, theta, phi)
    else:
        chi, D = chi_m, _D(j, m, k + H, theta, phi)
    r = 1 / math.sqrt(2)
    return np.concatenate([r * (a + b) * chi * D, r * (a - b) * chi * D])


def fg_from_f12(f1, f2) -> tuple[complex, complex]:
    """f = (f1 + f2)/sqrt2, g = (f1 - f2)/(i sqrt2)."""
    r = math.sqrt(2)
    return (f1 + f2) / r, (f1 - f2) / (1j * r)


def pauli_frame_solutions(mode: MonopoleMode, N: complex, theta, phi) -> np.ndarray:
    """Pauli-frame Cartesian column for a state of definite N, from the xi harmonics.

    N = (-1)^(j+1): (f xi^(1), -i g xi^(2)); N = (-1)^j: (-i g xi^(2), f xi^(1)).
    Here (-1)^x means exp(i pi x).
    """
    if mode.is_jmin:
        raise ValueError("j = j_min has no N eigenstates; use jmin_assembly")
    n_odd, n_even = minus_one_pow(mode.j + 1), minus_one_pow(mode.j)
    f, g = fg_from_f12(mode.f[0], mode.f[1])
    x1 = xi_harmonic(1, mode.j, mode.m, mode.k, theta, phi)
    x2 = xi_harmonic(2, mode.j, mode.m, mode.k, theta, phi)
    if abs(N - n_odd) < 1e-12:
        return np.concatenate([f * x1, -1j * g * x2])
    if abs(N - n_even) < 1e-12:
        return np.concatenate([-1j * g * x2, f * x1])
    raise ValueError(f"N = {N} is neither exp(i pi (j+1)) nor exp(i pi j) for j = {mode.j}")


def chain_to_pauli(mode: MonopoleMode, theta, phi) -> np.ndarray:
    """Weyl/spherical column taken to the Pauli frame in the Cartesian tetrad."""
    return weyl_to_pauli(to_cartesian(mode.field())).evaluate(theta, phi)
