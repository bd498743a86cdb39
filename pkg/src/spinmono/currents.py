"""Dirac current J^alpha = Psi^+ gamma^0 gamma^a Psi e^alpha_(a) for monopole modes."""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .fields import GAMMA
from .harmonics import MonopoleMode
from .numerics import HalfInt, SphereGrid
from .radial import FLAT, MetricProfile
from .wigner import index_valid, little_d

H = HalfInt(1)


@dataclass(frozen=True)
class FourCurrent:
    Jt: np.ndarray
    Jr: np.ndarray
    Jtheta: np.ndarray
    Jphi: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.stack([self.Jt, self.Jr, self.Jtheta, self.Jphi])


def tetrad_factors(metric: MetricProfile, r: float, theta):
    """(e^t_(0), e^r_(3), e^theta_(1), e^phi_(2)) of the diagonal tetrad."""
    with mp.workdps(20):
        R = mp.mpf(r)
        et = float(mp.exp(-metric.nu_g(R) / 2))
        er = float(mp.exp(-metric.mu_g(R) / 2))
    theta = np.asarray(theta, dtype=float)
    return et, er, 1.0 / r, 1.0 / (r * np.sin(theta))


def _prefactor(metric: MetricProfile, r: float) -> float:
    with mp.workdps(20):
        R = mp.mpf(r)
        return float(mp.exp(-(metric.nu_g(R) + metric.mu_g(R)) / 2) / R ** 2)


def current_of_mode(mode: MonopoleMode, theta, phi=0.0, metric: MetricProfile = FLAT, r: float = 1.0,
                    with_prefactor: bool = False, gauge: str = "S") -> FourCurrent:
    """Bilinears of the angular column; the r^-2 e^{-(nu_g+mu)/2} factor is applied only on request."""
    from .gauge import gauge_transform

    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    psi = gauge_transform(mode.field(), gauge).evaluate(theta, phi)
    et, er, eth, eph = tetrad_factors(metric, r, theta)
    dens = [np.einsum("i...,ij,j...->...", np.conj(psi), GAMMA[0] @ GAMMA[a], psi) for a in range(4)]
    # tetrad index order (0: t, 1: theta, 2: phi, 3: r)
    J = FourCurrent(et * dens[0], er * dens[3], eth * dens[1], eph * dens[2])
    for comp in (J.Jt, J.Jr, J.Jtheta, J.Jphi):
        if np.max(np.abs(np.imag(comp)), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(comp), initial=0.0)):
            raise ArithmeticError("current came out complex")
    scale = _prefactor(metric, r) if with_prefactor else 1.0
    return FourCurrent(*(scale * np.real(c) for c in (J.Jt, J.Jr, J.Jtheta, J.Jphi)))


def current_bilinear_formulas(mode: MonopoleMode, theta, metric: MetricProfile = FLAT, r: float = 1.0) -> FourCurrent:
    """The same four components written directly in f_i and d_{k -/+ 1/2}(theta)."""
    theta = np.asarray(theta, dtype=float)
    f1, f2, f3, f4 = mode.f
    j, m, k = mode.j, mode.m, mode.k

    def d(s):
        return little_d(j, -m, s)(theta) if index_valid(j, -m, s) else np.zeros_like(theta)

    dm, dp = d(k - H), d(k + H)
    et, er, eth, eph = tetrad_factors(metric, r, theta)
    a = np.abs
    Jt = et * (dm ** 2 * (a(f1) ** 2 + a(f3) ** 2) + dp ** 2 * (a(f4) ** 2 + a(f2) ** 2))
    Jr = er * (dm ** 2 * (a(f1) ** 2 - a(f3) ** 2) + dp ** 2 * (a(f4) ** 2 - a(f2) ** 2))
    c = np.conj
    Jth = eth * ((c(f1) * f2 + f1 * c(f2)) - (c(f3) * f4 + f3 * c(f4))) * dm * dp
    Jph = -1j * eph * ((c(f1) * f2 - f1 * c(f2)) - (c(f3) * f4 - f3 * c(f4))) * dm * dp
    return FourCurrent(Jt, Jr, np.real(Jth), np.real(Jph))


def total_charge(mode: MonopoleMode, grid: SphereGrid | None = None, metric: MetricProfile = FLAT,
                 r: float = 1.0) -> float:
    """Sphere integral of J^t at fixed r."""
    grid = grid or SphereGrid(32, 32)
    J = current_of_mode(mode, grid.theta, grid.phi, metric, r)
    return float(grid.integrate(J.Jt).real)


def expected_charge(mode: MonopoleMode, metric: MetricProfile = FLAT, r: float = 1.0) -> float:
    """(4 pi / (2j + 1)) sum |f_i|^2 times e^t_(0), using the unit norms of the D-functions."""
    et = tetrad_factors(metric, r, 1.0)[0]
    return et * 4 * math.pi / (2 * float(mode.j) + 1) * sum(abs(x) ** 2 for x in mode.f)
