"""Radial systems: flat four-component and parity-reduced pairs, j_min closed forms, curved backgrounds.

Metric exponents are written nu_g, mu_g (ds^2 = e^nu_g dt^2 - e^mu_g dr^2 - r^2 dOmega^2)
to keep them apart from the angular constant nu = sqrt((j+1/2)^2 - k^2).
"""
from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from typing import Callable

import mpmath as mp
import numpy as np

from .numerics import as_half
from .operators import sigma_nu


def _precise(dps: int):
    """Run the wrapped function at a fixed mpmath working precision."""

    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            with mp.workdps(dps):
                return fn(*args, **kwargs)

        return inner

    return wrap


def nu_of(j, k) -> float:
    return sigma_nu(j, k)


@dataclass(frozen=True)
class MetricProfile:
    """Static spherically symmetric metric; nu_g and mu_g accept mpmath numbers."""

    name: str
    nu_g: Callable
    mu_g: Callable
    chi_map: Callable | None = None  # r as a function of chi
    r_max: float = math.inf

    def check(self, r):
        if not 0 < r < self.r_max:
            raise ValueError(f"r = {r} outside the domain of the {self.name} profile")
        for fn in (self.nu_g, self.mu_g):
            v = fn(mp.mpf(r))
            if not mp.isfinite(v):
                raise ValueError(f"metric exponent not finite at r = {r}")


FLAT = MetricProfile("flat", lambda r: 0 * r, lambda r: 0 * r)
SPHERICAL = MetricProfile("spherical", lambda r: 0 * r, lambda r: -mp.log(1 - r ** 2), mp.sin, 1.0)
LOBACHEVSKI = MetricProfile("lobachevski", lambda r: 0 * r, lambda r: -mp.log(1 + r ** 2), mp.sinh)
PROFILES = {p.name: p for p in (FLAT, SPHERICAL, LOBACHEVSKI)}


@dataclass(frozen=True)
class RadialState:
    r_grid: np.ndarray
    values: np.ndarray  # (4, n) for f1..f4 or (2, n) for (f, g)
    epsilon: complex
    mass: float
    nu: float
    delta: int | None = None

    def __post_init__(self):
        if self.nu < 0:
            raise ValueError("nu must be >= 0")
        if self.delta is not None and self.values.shape[0] == 4:
            f1, f2, f3, f4 = self.values
            if np.max(np.abs(f4 - self.delta * f1)) > 1e-12 * max(1.0, np.max(np.abs(f1))) or np.max(
                np.abs(f3 - self.delta * f2)
            ) > 1e-12 * max(1.0, np.max(np.abs(f2))):
                raise ValueError("state violates f4 = delta f1, f3 = delta f2")


# ---- flat systems ----------------------------------------------------------

def flat_rhs(k, j, eps, m, r, state4):
    """df_i/dr from the four first-order radial equations."""
    if np.any(np.asarray(r) <= 0):
        raise ValueError("r must be positive")
    nu = nu_of(j, k)
    f1, f2, f3, f4 = state4
    return np.array(
        [
            1j * eps * f1 - nu / r * f2 - 1j * m * f3,
            -1j * eps * f2 - nu / r * f1 + 1j * m * f4,
            -1j * eps * f3 - nu / r * f4 + 1j * m * f1,
            1j * eps * f4 - nu / r * f3 - 1j * m * f2,
        ]
    )


def flat_equations(k, j, eps, m, r, state4, deriv4):
    """Left-hand sides of the four equations; zero on solutions."""
    nu = nu_of(j, k)
    f1, f2, f3, f4 = state4
    d1, d2, d3, d4 = deriv4
    return np.array(
        [
            eps * f3 - 1j * d3 - 1j * nu / r * f4 - m * f1,
            eps * f4 + 1j * d4 + 1j * nu / r * f3 - m * f2,
            eps * f1 + 1j * d1 + 1j * nu / r * f2 - m * f3,
            eps * f2 - 1j * d2 - 1j * nu / r * f1 - m * f4,
        ]
    )


def parity_reduce(state4, delta: int, tol: float = 1e-12):
    """(f1, f2, delta f2, delta f1) -> (f, g) with f = (f1+f2)/sqrt2, g = (f1-f2)/(i sqrt2)."""
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    f1, f2, f3, f4 = (np.asarray(x, dtype=complex) for x in state4)
    scale = max(1.0, float(np.max(np.abs(np.stack([f1, f2])))))
    if np.max(np.abs(f4 - delta * f1)) > tol * scale or np.max(np.abs(f3 - delta * f2)) > tol * scale:
        raise ValueError("state is not delta-constrained")
    r2 = math.sqrt(2)
    return np.array([(f1 + f2) / r2, (f1 - f2) / (1j * r2)])


def parity_expand(state2, delta: int):
    f, g = (np.asarray(x, dtype=complex) for x in state2)
    r2 = math.sqrt(2)
    f1, f2 = (f + 1j * g) / r2, (f - 1j * g) / r2
    return np.array([f1, f2, delta * f2, delta * f1])


def reduced_rhs(nu, eps, m, delta, r, y):
    """f' = -nu/r f - (eps + delta m) g, g' = nu/r g + (eps - delta m) f."""
    f, g = y
    return np.array([-nu / r * f - (eps + delta * m) * g, nu / r * g + (eps - delta * m) * f])


def rk4(rhs: Callable, y0, r0: float, r1: float, n: int):
    """Classical fixed-step RK4; returns (r_grid, values with shape (dim, n+1))."""
    if n < 1:
        raise ValueError("need at least one step")
    h = (r1 - r0) / n
    ys = np.empty((len(y0), n + 1), dtype=complex)
    y = np.asarray(y0, dtype=complex)
    ys[:, 0] = y
    r = r0
    for i in range(n):
        k1 = rhs(r, y)
        k2 = rhs(r + h / 2, y + h / 2 * k1)
        k3 = rhs(r + h / 2, y + h / 2 * k2)
        k4 = rhs(r + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        r = r0 + (i + 1) * h
        ys[:, i + 1] = y
    return np.linspace(r0, r1, n + 1), ys


def regular_start(nu, eps, m, delta, r0):
    """Leading behaviour near the origin of the solution regular as r^nu."""
    g = r0 ** nu
    f = -(eps + delta * m) * r0 ** (nu + 1) / (2 * nu + 1)
    return np.array([f, g], dtype=complex)


def solve_reduced(k, j, eps, m, delta, r0: float, r1: float, n: int, y0=None) -> RadialState:
    nu = nu_of(j, k)
    y0 = regular_start(nu, eps, m, delta, r0) if y0 is None else y0
    r, ys = rk4(lambda rr, y: reduced_rhs(nu, eps, m, delta, rr, y), y0, r0, r1, n)
    return RadialState(r, ys, eps, m, nu, delta)


def convergence_order(k, j, eps, m, delta, r0=0.5, r1=3.0, n=40, y0=(1.0, 0.5), levels: int = 4) -> float:
    """Observed RK4 order: log-log slope of max errors on the coarse nodes against a 64x finer reference."""
    ref = solve_reduced(k, j, eps, m, delta, r0, r1, n * 64, y0).values
    ns = [n * 2 ** i for i in range(levels)]
    errs = []
    for ni in ns:
        vals = solve_reduced(k, j, eps, m, delta, r0, r1, ni, y0).values
        errs.append(np.max(np.abs(vals - ref[:, :: (n * 64) // ni])))
    slope = np.polyfit(np.log(ns), np.log(errs), 1)[0]
    return float(-slope)


def conserved_quantities(state: RadialState):
    """Im(f* g), constant along real-eps trajectories of the reduced pair."""
    f, g = state.values
    return np.imag(np.conj(f) * g)


def wronskian(a: RadialState, b: RadialState):
    return a.values[0] * b.values[1] - a.values[1] * b.values[0]


def backsubstitution_residual(k, j, eps, m, delta, r, y2) -> float:
    """Expand a reduced state and its derivative, then evaluate the four-component equations."""
    nu = nu_of(j, k)
    y4 = parity_expand(y2, delta)
    d4 = parity_expand(reduced_rhs(nu, eps, m, delta, r, np.asarray(y2)), delta)
    return float(np.max(np.abs(flat_equations(k, j, eps, m, r, y4, d4))))


# ---- j_min ------------------------------------------------------------------

@dataclass(frozen=True)
class JminSolution:
    k: float
    eps: float
    mass: float
    rate: complex  # f_main = exp(rate * r)
    kind: str  # decaying, growing, oscillatory, degenerate
    main: str  # which amplitude solves the second-order equation (f1 or f4)
    partner: str

    def main_value(self, r):
        return np.exp(self.rate * np.asarray(r, dtype=complex))

    def partner_value(self, r):
        # partner = (eps + i d/dr) main / m
        return (self.eps + 1j * self.rate) / self.mass * self.main_value(r)


def jmin_solve(k, eps: float, m: float, branch: str | None = None) -> JminSolution:
    """Closed-form j_min radial solution f'' + (eps^2 - m^2) f = 0.

    branch: 'decaying' or 'growing' when eps < m (default decaying), '+' or '-' for
    the oscillatory exp(+/- i q r) when eps > m.
    """
    k = as_half(k)
    if k.twice == 0:
        raise ValueError("k = 0 has no j_min state")
    if m == 0:
        raise ValueError("m = 0: no bound branch and the partner amplitude is undefined")
    main, partner = ("f1", "f3") if k.twice > 0 else ("f4", "f2")
    if abs(eps) < m:
        kappa = math.sqrt(m * m - eps * eps)
        branch = branch or "decaying"
        if branch not in ("decaying", "growing"):
            raise ValueError(f"branch {branch!r} invalid for eps < m")
        rate = -kappa if branch == "decaying" else kappa
        kind = branch
    elif abs(eps) == m:
        rate, kind = 0.0, "degenerate"
    else:
        if branch in ("decaying", "growing"):
            raise ValueError("no decaying branch for |eps| > m")
        q = math.sqrt(eps * eps - m * m)
        rate = 1j * q if branch in (None, "+") else -1j * q
        kind = "oscillatory"
    return JminSolution(float(k), eps, m, complex(rate), kind, main, partner)


@_precise(30)
def jmin_pair_residual(sol: JminSolution, r) -> float:
    """First-order pair residual with derivatives from mpmath.

    k > 0: eps f1 + i f1' - m f3 = 0, eps f3 - i f3' - m f1 = 0;
    k < 0: eps f4 + i f4' - m f2 = 0, eps f2 - i f2' - m f4 = 0 (same form in (main, partner)).
    """
    rate = mp.mpc(sol.rate.real, sol.rate.imag)
    eps, m = mp.mpf(sol.eps), mp.mpf(sol.mass)

    def main(x):
        return mp.exp(rate * x)

    def partner(x):
        return (eps + 1j * rate) / m * mp.exp(rate * x)

    worst = 0.0
    for x in np.atleast_1d(r):
        x = mp.mpf(float(x))
        a = eps * main(x) + 1j * mp.diff(main, x) - m * partner(x)
        b = eps * partner(x) - 1j * mp.diff(partner, x) - m * main(x)
        scale = max(abs(main(x)), mp.mpf(1e-300))
        worst = max(worst, float(max(abs(a), abs(b)) / scale))
    return worst


@_precise(30)
def jmin_second_order_residual(sol: JminSolution, r) -> float:
    rate = mp.mpc(sol.rate.real, sol.rate.imag)
    eps, m = mp.mpf(sol.eps), mp.mpf(sol.mass)
    worst = 0.0
    for x in np.atleast_1d(r):
        x = mp.mpf(float(x))
        f = lambda y: mp.exp(rate * y)  # noqa: E731
        res = mp.diff(f, x, 2) + (eps ** 2 - m ** 2) * f(x)
        worst = max(worst, float(abs(res) / abs(f(x))))
    return worst


# ---- curved backgrounds -----------------------------------------------------

def curved_rhs(metric: MetricProfile, k, j, delta, eps, m, r, y):
    """Reduced pair on a static background:
    e^{-mu/2} f' + nu/r f + (eps e^{-nu_g/2} + delta m) g = 0,
    e^{-mu/2} g' - nu/r g - (eps e^{-nu_g/2} - delta m) f = 0.
    """
    nu = nu_of(j, k)
    en = math.exp(-float(metric.nu_g(mp.mpf(r))) / 2)
    em = math.exp(float(metric.mu_g(mp.mpf(r))) / 2)
    if not (en > 0 and em > 0):
        raise ValueError("metric must be positive")
    f, g = y
    return np.array(
        [em * (-nu / r * f - (eps * en + delta * m) * g), em * (nu / r * g + (eps * en - delta * m) * f)]
    )


@_precise(30)
def curved_jmin_residual(metric: MetricProfile, sol: JminSolution, r) -> float:
    """Residual of the curved j_min pair for f(r) = f(chi(r)) (dchi = e^{mu/2} dr):
    eps e^{-nu_g/2} f1 + i e^{-mu/2} f1' - m f3 = 0, eps e^{-nu_g/2} f3 - i e^{-mu/2} f3' - m f1 = 0.
    """
    rate = mp.mpc(sol.rate.real, sol.rate.imag)
    eps, m = mp.mpf(sol.eps), mp.mpf(sol.mass)
    chi = _chi_of_r(metric)
    main = lambda x: mp.exp(rate * chi(x))  # noqa: E731
    partner = lambda x: (eps + 1j * rate) / m * main(x)  # noqa: E731
    worst = 0.0
    for x in np.atleast_1d(r):
        x = mp.mpf(float(x))
        en, em = mp.exp(-metric.nu_g(x) / 2), mp.exp(-metric.mu_g(x) / 2)
        a = eps * en * main(x) + 1j * em * mp.diff(main, x) - m * partner(x)
        b = eps * en * partner(x) - 1j * em * mp.diff(partner, x) - m * main(x)
        worst = max(worst, float(max(abs(a), abs(b)) / abs(main(x))))
    return worst


def _chi_of_r(metric: MetricProfile):
    if metric.name == "flat" or metric.chi_map is None:
        return lambda x: x
    if metric.name == "spherical":
        return mp.asin
    if metric.name == "lobachevski":
        return mp.asinh
    return lambda x: mp.quad(lambda s: mp.exp(metric.mu_g(s) / 2), [0, x])


def closed_geometry(geometry: str, eps: float, m: float, chi, branch: str = "decaying", elliptic: bool = False):
    """f(chi) = exp(-/+ sqrt(m^2 - eps^2) chi), with r = sin(chi) or sinh(chi)."""
    chi_arr = np.asarray(chi, dtype=float)
    if geometry == "spherical":
        hi = math.pi / 2 if elliptic else math.pi
        if np.any(chi_arr < 0) or np.any(chi_arr > hi):
            raise ValueError(f"chi must lie in [0, {hi}]")
        r = np.sin(chi_arr)
    elif geometry == "lobachevski":
        if np.any(chi_arr < 0):
            raise ValueError("chi must be >= 0")
        r = np.sinh(chi_arr)
    else:
        raise ValueError(f"unknown geometry {geometry!r}")
    rate = cmath.sqrt(m * m - eps * eps)
    sign = -1 if branch == "decaying" else 1
    return np.exp(sign * rate * chi_arr), r


@_precise(40)
def chi_equation_residual(geometry: str, eps: float, m: float, chis, branch: str = "decaying") -> float:
    """Residual of the second-order j_min equation in r-coordinates,
    [(e^{-nu_g/2} d_t - e^{-mu/2} d_r)(e^{-nu_g/2} d_t + e^{-mu/2} d_r) + m^2] e^{-i eps t} f(chi(r)),
    reported relative to |f|. Equivalent to d^2 f/dchi^2 + (eps^2 - m^2) f = 0.
    """
    metric = PROFILES[geometry]
    rate = mp.sqrt(mp.mpf(m) ** 2 - mp.mpf(eps) ** 2) * (-1 if branch == "decaying" else 1)
    chi_of = _chi_of_r(metric)
    eps_m, m_m = mp.mpf(eps), mp.mpf(m)
    f = lambda x: mp.exp(rate * chi_of(x))  # noqa: E731
    em = lambda x: mp.exp(-metric.mu_g(x) / 2)  # noqa: E731
    inner = lambda x: -1j * eps_m * f(x) + em(x) * mp.diff(f, x)  # noqa: E731
    worst = 0.0
    for c in np.atleast_1d(chis):
        x = metric.chi_map(mp.mpf(float(c)))
        metric.check(float(x))
        res = -1j * eps_m * inner(x) - em(x) * mp.diff(inner, x) + m_m ** 2 * f(x)
        worst = max(worst, float(abs(res) / abs(f(x))))
    return worst


@_precise(30)
def chi_ode_residual(eps: float, m: float, chis, branch: str = "decaying", flipped_sign: bool = False) -> float:
    """d^2f/dchi^2 + s (eps^2 - m^2) f for f = exp(-/+ sqrt(m^2-eps^2) chi); s = -1 with flipped_sign."""
    rate = mp.sqrt(mp.mpf(m) ** 2 - mp.mpf(eps) ** 2) * (-1 if branch == "decaying" else 1)
    s = -1 if flipped_sign else 1
    worst = 0.0
    for c in np.atleast_1d(chis):
        f = lambda y: mp.exp(rate * y)  # noqa: E731
        x = mp.mpf(float(c))
        res = mp.diff(f, x, 2) + s * (mp.mpf(eps) ** 2 - mp.mpf(m) ** 2) * f(x)
        worst = max(worst, float(abs(res) / abs(f(x))))
    return worst


@_precise(30)
def tetrad_divergence(metric: MetricProfile, r) -> float:
    """e^beta_(3);beta = (1/sqrt(-g)) d_r (sqrt(-g) e^{-mu/2}), sqrt(-g) = e^{(nu_g+mu)/2} r^2 sin(theta)."""
    x = mp.mpf(r)
    sg = lambda y: mp.exp((metric.nu_g(y) + metric.mu_g(y)) / 2) * y ** 2  # noqa: E731
    return float(mp.diff(lambda y: sg(y) * mp.exp(-metric.mu_g(y) / 2), x) / sg(x))


@_precise(30)
def connection_leftover(metric: MetricProfile, r, prefactor: str = "nu_only") -> float:
    """Coefficient c in i gamma^3 e^{-mu/2} (d_r + c) left after Psi = h(r) Phi.

    prefactor 'nu_mu' uses h = e^{-(nu_g+mu)/4}/r; 'nu_only' uses h = e^{-nu_g/4}/r.
    Zero means the radial connection is removed entirely.
    """
    x = mp.mpf(r)
    if prefactor == "nu_mu":
        h = lambda y: mp.exp(-(metric.nu_g(y) + metric.mu_g(y)) / 4) / y  # noqa: E731
    elif prefactor == "nu_only":
        h = lambda y: mp.exp(-metric.nu_g(y) / 4) / y  # noqa: E731
    else:
        raise ValueError(f"unknown prefactor {prefactor!r}")
    half_div = mp.mpf(tetrad_divergence(metric, r)) / 2 / mp.exp(-metric.mu_g(x) / 2)
    return float(half_div + mp.diff(h, x) / h(x))
