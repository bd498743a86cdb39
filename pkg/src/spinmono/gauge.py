"""Schwinger, Dirac and Wu-Yang monopole potentials and the gauge dictionary."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath as mp
import numpy as np

from .fields import GAUGES, SpinorField, Term, gauge_shift
from .numerics import SphereGrid, as_half
from .operators import apply_J, apply_K, apply_parity

WY_OVERLAP = 0.2


@dataclass(frozen=True)
class GaugePotential:
    gauge: str
    g_charge: float
    overlap: float = WY_OVERLAP

    @property
    def region(self) -> tuple[float, float]:
        if self.gauge == "WY_N":
            return (0.0, math.pi / 2 + self.overlap)
        if self.gauge == "WY_S":
            return (math.pi / 2 - self.overlap, math.pi)
        return (0.0, math.pi)

    def __call__(self, theta):
        return potential(self.gauge, self.g_charge, theta, self.overlap)


def potential(gauge: str, g_charge: float, theta, overlap: float = WY_OVERLAP):
    """A_phi(theta): S g cos, D g (cos - 1), WY_N g (cos - 1), WY_S g (cos + 1)."""
    th = np.asarray(theta, dtype=float)
    c = np.cos(th)
    if gauge == "S":
        return g_charge * c
    if gauge == "D":
        return g_charge * (c - 1)
    if gauge == "WY_N":
        if np.any(th >= math.pi / 2 + overlap):
            raise ValueError("WY_N patch queried outside theta < pi/2 + overlap")
        return g_charge * (c - 1)
    if gauge == "WY_S":
        if np.any(th <= math.pi / 2 - overlap):
            raise ValueError("WY_S patch queried outside theta > pi/2 - overlap")
        return g_charge * (c + 1)
    raise ValueError(f"unknown gauge {gauge!r}")


def transition_exponent(src: str, dst: str, k) -> Fraction:
    """Psi^dst = exp(i s phi) Psi^src with s returned here."""
    return gauge_shift(dst, k) - gauge_shift(src, k)


def gauge_transform(psi: SpinorField, to: str) -> SpinorField:
    """Multiply by the phase exp(i (mu_to - mu_from) phi) and retag the field."""
    if to not in GAUGES:
        raise ValueError(f"unknown gauge {to!r}")
    s = transition_exponent(psi.gauge, to, psi.k)
    comps = []
    for comp in psi.components:
        if isinstance(comp, tuple):
            comps.append(tuple(Term(t.coef, t.phase + s, t.theta) for t in comp))
        else:
            comps.append(lambda th, ph, comp=comp: np.exp(1j * float(s) * np.asarray(ph)) * comp(th, ph))
    return replace(psi, components=tuple(comps), gauge=to)


def potential_shift(src: str, dst: str, k, g_charge: float, phi: float = 0.7) -> float:
    """-i S d_phi S^{-1} / e for S = exp(i s phi), with e = k / g; compare with A^dst - A^src."""
    s = float(transition_exponent(src, dst, k))
    kf = float(as_half(k))
    if kf == 0:
        return 0.0
    e_charge = kf / g_charge
    with mp.workdps(30):
        S = lambda x: mp.exp(1j * s * x)  # noqa: E731
        Sinv = lambda x: mp.exp(-1j * s * x)  # noqa: E731
        x = mp.mpf(phi)
        val = -1j * S(x) * mp.diff(Sinv, x) / e_charge
    if abs(mp.im(val)) > 1e-20:
        raise ArithmeticError("potential shift came out complex")
    return float(mp.re(val))


def wy_transition(k, phi):
    """Psi^(S) = exp(-2 i k phi) Psi^(N) in the overlap; k may be any real number here."""
    return np.exp(-2j * float(k) * np.asarray(phi, dtype=float))


def wy_single_valued(k, samples: int = 16, tol: float = 1e-12) -> bool:
    phi = np.linspace(0, 2 * math.pi, samples, endpoint=False)
    return bool(np.max(np.abs(wy_transition(k, phi + 2 * math.pi) - wy_transition(k, phi))) < tol)


@dataclass(frozen=True)
class OperatorDescriptors:
    gauge: str
    J1: str
    J2: str
    J3: str
    K: str
    N: str
    mu: str  # azimuthal shift entering the operators

    @property
    def schrodinger_basis(self) -> bool:
        """True only when J3 = -i d_phi."""
        return self.J3 == "l3"


def transformed_operators(gauge: str) -> OperatorDescriptors:
    table = {
        "S": ("0", "l3", "exp(0) N^S", "(i sigma12 - k)"),
        "D": ("k", "l3 - k", "exp(i k (2 phi + pi)) N^S", "(i sigma12 - k (1 - cos theta))"),
        "WY_N": ("k", "l3 - k", "exp(i k (2 phi + pi)) N^S", "(i sigma12 - k (1 - cos theta))"),
        "WY_S": ("-k", "l3 + k", "exp(-i k (2 phi + pi)) N^S", "(i sigma12 - k (1 + cos theta))"),
    }
    if gauge not in table:
        raise ValueError(f"unknown gauge {gauge!r}")
    mu, j3, n, pot = table[gauge]
    pot_s = pot if gauge != "S" else "(i sigma12 - k cos theta)"
    return OperatorDescriptors(
        gauge,
        f"l1 + cos(phi)/sin(theta) {pot_s}",
        f"l2 + sin(phi)/sin(theta) {pot_s}",
        j3,
        f"-i g0 g3 (i g1 d_theta + g2 (i d_phi + {mu} + (i sigma12 - k) cos theta)/sin theta)",
        n,
        mu,
    )


def n_phase(gauge: str, k, phi):
    """Phase relating N in the given gauge to the Schwinger-gauge form."""
    s = float(transition_exponent("S", gauge, k))
    return np.exp(1j * s * (2 * np.asarray(phi, dtype=float) + math.pi))


def apply_N_gauge(psi: SpinorField, grid: SphereGrid):
    """N in any gauge as S N^S S^{-1}."""
    res = apply_parity("N", gauge_transform(psi, "S"), grid)
    return replace(res, field=gauge_transform(res.field, psi.gauge))


def eigen_triple(psi: SpinorField, grid: SphereGrid) -> tuple[complex, complex, complex | None]:
    """(m, K, N) as Rayleigh quotients of J3, K and N on a basis state."""
    from .operators import _rayleigh

    ref = psi.sample(grid)
    m, _ = _rayleigh(apply_J(3, psi).sample(grid), ref, grid)
    K = apply_K(psi.k, psi, grid).eigenvalue
    N = apply_N_gauge(psi, grid).eigenvalue
    return m, K, N


def maxwell_residual(metric, g_charge: float, thetas, r: float = 0.5, a_phi=None) -> float:
    """max over theta of |(1/sqrt(-g)) d_theta (sqrt(-g) F^{theta phi})| for A_phi(theta).

    sqrt(-g) = e^{(nu_g + mu)/2} r^2 sin(theta), F^{theta phi} = F_{theta phi} / (r^4 sin^2 theta).
    """
    if a_phi is None:
        a_phi = lambda th: g_charge * mp.cos(th)  # noqa: E731
    metric.check(r)
    worst = 0.0
    with mp.workdps(30):
        R = mp.mpf(r)
        w = mp.exp((metric.nu_g(R) + metric.mu_g(R)) / 2)

        def density(th):
            F = mp.diff(a_phi, th)
            return w * R ** 2 * mp.sin(th) * F / (R ** 4 * mp.sin(th) ** 2)

        for t in np.atleast_1d(thetas):
            th = mp.mpf(float(t))
            val = mp.diff(density, th) / (w * R ** 2 * mp.sin(th))
            worst = max(worst, float(abs(val)))
    return worst
