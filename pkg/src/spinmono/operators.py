"""Angular operators on spinor fields: J_i, Sigma^k, K, and the discrete Pi and N.

Basis-built fields are differentiated exactly term by term; free-form fields use
eighth-order finite differences in theta and phi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fields import GAMMA, SIGMA3_HALF, SpinorField, Term, gauge_shift, lower_indices, max_norm
from .numerics import HalfInt, RationalPoly, SphereGrid, as_half, fd_derivative, minus_one_pow
from .wigner import ThetaFunction, index_valid, little_d

HALF = Fraction(1, 2)
FD_STEP = 1e-3

# -i gamma^0 gamma^3 in the Weyl basis
K_MATRIX = -1j * GAMMA[0] @ GAMMA[3]
PI_SPH = -np.fliplr(np.eye(4))


@dataclass(frozen=True)
class OperatorResult:
    field: SpinorField
    residual: float = 0.0
    eigenvalue: complex | None = None


@dataclass(frozen=True)
class ParityResult:
    field: SpinorField
    eigenvalue: complex | None
    residual: float
    outside_state_space: bool
    verdict: str


def _lambdas(psi: SpinorField):
    return tuple(s - psi.k.value for s in SIGMA3_HALF[psi.size])


# ---- exact term operations ------------------------------------------------

def _deriv_poly(F: ThetaFunction) -> RationalPoly:
    """Poly of sin(theta) dF/dc at exponents (alpha - 1/2, beta - 1/2)."""
    a, b, p = F.alpha, F.beta, F.poly
    return p * RationalPoly([-a, -a]) + p * RationalPoly([b, -b]) + p.derivative() * RationalPoly([1, 0, -1])


def _shifted(F: ThetaFunction, poly: RationalPoly) -> ThetaFunction:
    return ThetaFunction(F.alpha - HALF, F.beta - HALF, poly, F.overall).canonical()


def _ladder_term(t: Term, lam, mu, sign: int) -> Term:
    F, M = t.theta, t.phase
    new = _deriv_poly(F) * (-sign) + F.poly * RationalPoly([lam, mu - M])
    return Term(t.coef, M + sign, _shifted(F, new))


def _dtheta_term(t: Term) -> Term:
    return Term(t.coef, t.phase, _shifted(t.theta, _deriv_poly(t.theta) * (-1)))


def _x_term(t: Term, lam, mu) -> Term:
    """(i d_phi + mu + lam cos(theta)) / sin(theta)"""
    F = t.theta
    return Term(t.coef, t.phase, _shifted(F, F.poly * RationalPoly([mu - t.phase, lam])))


def _terms(comp, fn):
    return tuple(x for x in (fn(t) for t in comp) if not x.theta.is_zero())


# ---- finite-difference operations ----------------------------------------

def _fd_theta(f):
    return lambda th, ph: fd_derivative(lambda x: f(x, ph), np.asarray(th, float), FD_STEP)


def _fd_phi(f):
    return lambda th, ph: fd_derivative(lambda y: f(th, y), np.asarray(ph, float), FD_STEP)


def _fd_J(i: int, f, lam, mu):
    dth, dph = _fd_theta(f), _fd_phi(f)
    lam, mu = float(lam), float(mu)
    if i == 3:
        return lambda th, ph: -1j * dph(th, ph) - mu * f(th, ph)

    def op(th, ph):
        s, c = np.sin(th), np.cos(th)
        pot = (lam + mu * c) / s * f(th, ph)
        if i == 1:
            return 1j * (np.sin(ph) * dth(th, ph) + c / s * np.cos(ph) * dph(th, ph)) + np.cos(ph) * pot
        return 1j * (-np.cos(ph) * dth(th, ph) + c / s * np.sin(ph) * dph(th, ph)) + np.sin(ph) * pot

    return op


# ---- J ----------------------------------------------------------------------

def _check_gauge(psi: SpinorField, gauge: str | None):
    if gauge is not None and gauge != psi.gauge:
        raise ValueError(f"field is in gauge {psi.gauge}, operator requested for {gauge}")


def apply_J(i: int, psi: SpinorField, gauge: str | None = None) -> SpinorField:
    """J_i = l_i + (i sigma^12 - k) (cos phi, sin phi, 0)/sin(theta), in the field's gauge."""
    if i not in (1, 2, 3, "+", "-"):
        raise ValueError(f"unknown component {i!r}")
    _check_gauge(psi, gauge)
    mu = gauge_shift(psi.gauge, psi.k)
    out = []
    for comp, lam in zip(psi.components, _lambdas(psi)):
        if not isinstance(comp, tuple):
            if i in ("+", "-"):
                j1, j2 = _fd_J(1, comp, lam, mu), _fd_J(2, comp, lam, mu)
                z = 1j if i == "+" else -1j
                out.append(lambda th, ph, j1=j1, j2=j2, z=z: j1(th, ph) + z * j2(th, ph))
            else:
                out.append(_fd_J(i, comp, lam, mu))
            continue
        if i == 3:
            out.append(tuple(Term(t.coef * complex(t.phase - mu), t.phase, t.theta) for t in comp if t.phase != mu))
            continue
        plus = _terms(comp, lambda t: _ladder_term(t, lam, mu, 1))
        minus = _terms(comp, lambda t: _ladder_term(t, lam, mu, -1))
        if i == "+":
            out.append(plus)
        elif i == "-":
            out.append(minus)
        elif i == 1:
            out.append(_scale_terms(plus, 0.5) + _scale_terms(minus, 0.5))
        else:
            out.append(_scale_terms(plus, -0.5j) + _scale_terms(minus, 0.5j))
    return psi.with_components(out)


def _scale_terms(terms, z):
    return tuple(Term(t.coef * z, t.phase, t.theta) for t in terms)


def casimir(psi: SpinorField) -> SpinorField:
    acc = None
    for i in (1, 2, 3):
        term = apply_J(i, apply_J(i, psi))
        acc = term if acc is None else acc + term
    return acc


def relative_residual(a: np.ndarray, b: np.ndarray, floor: float = 0.0) -> float:
    """max|a - b| over the larger of max|a|, max|b| and floor (floor guards a = b = 0 up to rounding)."""
    scale = max(max_norm(b), max_norm(a), floor, 1e-300)
    return max_norm(a - b) / scale


def commutator_residuals(psi: SpinorField, grid: SphereGrid) -> tuple[float, float, float]:
    """Residuals of [J_a, J_b] - i J_c for the three cyclic pairs."""
    out = []
    floor = max_norm(psi.sample(grid))
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        lhs = apply_J(a, apply_J(b, psi)) - apply_J(b, apply_J(a, psi))
        rhs = apply_J(c, psi).scaled(1j)
        out.append(relative_residual(lhs.sample(grid), rhs.sample(grid), floor))
    return tuple(out)


# ---- Sigma and K -----------------------------------------------------------

def _sigma_field(psi: SpinorField) -> SpinorField:
    mu = gauge_shift(psi.gauge, psi.k)
    dth, x = [], []
    for comp, lam in zip(psi.components, _lambdas(psi)):
        if isinstance(comp, tuple):
            dth.append(_terms(comp, _dtheta_term))
            x.append(_terms(comp, lambda t, lam=lam: _x_term(t, lam, mu)))
        else:
            d_ph = _fd_phi(comp)
            dth.append(_fd_theta(comp))
            x.append(
                lambda th, ph, comp=comp, d_ph=d_ph, lam=float(lam): (
                    1j * d_ph(th, ph) + (float(mu) + lam * np.cos(th)) * comp(th, ph)
                ) / np.sin(th)
            )
    return psi.with_components(dth).matrix(1j * GAMMA[1]) + psi.with_components(x).matrix(GAMMA[2])


def sigma_expected(psi: SpinorField) -> SpinorField:
    """i nu (-f4 D_{k-1/2}, f3 D_{k+1/2}, f2 D_{k-1/2}, -f1 D_{k+1/2}) for a basis spinor."""
    from .fields import basis_spinor

    j, m, f = psi.labels["j"], psi.labels["m"], psi.labels["f"]
    nu = sigma_nu(j, psi.k)
    g = (-f[3], f[2], f[1], -f[0])
    return basis_spinor(psi.k, j, m, [1j * nu * c for c in g], psi.gauge)


def sigma_nu(j, k) -> float:
    j, k = float(as_half(j)), float(as_half(k))
    x = (j + 0.5) ** 2 - k ** 2
    return math.sqrt(x) if x > 0 else 0.0


def j_min(k) -> HalfInt:
    k = as_half(k)
    return HalfInt(1) if k.twice == 0 else abs(k) - HalfInt(1)


def _check_j(psi: SpinorField):
    j = psi.labels.get("j")
    if j is not None and j < j_min(psi.k):
        raise ValueError(f"j = {j} below j_min = {j_min(psi.k)}")


def apply_sigma(k, psi: SpinorField, grid: SphereGrid | None = None) -> OperatorResult:
    """Sigma^k_{theta phi} = i gamma^1 d_theta + gamma^2 (i d_phi + (i sigma^12 - k) cos)/sin."""
    if as_half(k) != psi.k:
        raise ValueError(f"field carries k = {psi.k}, operator requested for k = {k}")
    _check_j(psi)
    out = _sigma_field(psi)
    residual = 0.0
    if grid is not None and "j" in psi.labels:
        scale = max(max_norm(psi.sample(grid)), 1e-300)
        residual = max_norm(out.sample(grid) - sigma_expected(psi).sample(grid)) / scale
    return OperatorResult(out, residual)


def _rayleigh(out: np.ndarray, psi: np.ndarray, grid: SphereGrid):
    norm = grid.inner(psi, psi).real
    if norm == 0:
        return None, math.inf
    ev = grid.inner(psi, out) / norm
    scale = max(max_norm(psi), 1e-300)
    return ev, max_norm(out - ev * psi) / scale


def apply_K(k, psi: SpinorField, grid: SphereGrid | None = None) -> OperatorResult:
    """K = -i gamma^0 gamma^3 Sigma^k; reports the Rayleigh eigenvalue and its residual."""
    res = apply_sigma(k, psi)
    out = res.field.matrix(K_MATRIX)
    if grid is None:
        return OperatorResult(out)
    ev, resid = _rayleigh(out.sample(grid), psi.sample(grid), grid)
    if ev is not None and abs(ev) < 1e-300:
        ev = 0.0
    return OperatorResult(out, resid, ev)


# ---- parity -----------------------------------------------------------------

def parity_flip_D(j, m, sigma) -> tuple[complex, HalfInt]:
    """P D^j_{-m,sigma} = sign * D^j_{-m,-sigma} with sign = exp(i pi j)."""
    j, m, sigma = as_half(j), as_half(m), as_half(sigma)
    if not index_valid(j, -m, sigma):
        raise ValueError(f"invalid indices j={j}, m={m}, sigma={sigma}")
    return minus_one_pow(j), -sigma


def parity_resample(values: np.ndarray, grid: SphereGrid) -> np.ndarray:
    """F(pi - theta, phi + pi) on the grid, using node symmetry (n_phi even)."""
    if grid.n_phi % 2:
        raise ValueError("phi grid must have an even number of points")
    return np.roll(values[..., ::-1, :], -grid.n_phi // 2, axis=-1)


def _p_term(t: Term) -> Term:
    return Term(t.coef * np.exp(1j * math.pi * float(t.phase)), t.phase, t.theta.reflect())


def apply_P(psi: SpinorField) -> SpinorField:
    out = []
    for comp in psi.components:
        if isinstance(comp, tuple):
            out.append(tuple(_p_term(t) for t in comp))
        else:
            out.append(lambda th, ph, comp=comp: comp(np.pi - np.asarray(th), np.asarray(ph) + np.pi))
    return psi.with_components(out)


def _project_lower(comp, sigma: HalfInt, j_max: int, grid: SphereGrid):
    """Expand a component on D^{j'}_{-m',sigma}, j' <= j_max, by quadrature."""
    vals = comp(grid.theta, grid.phi) if callable(comp) else sum(
        (t(grid.theta, grid.phi) for t in comp), np.zeros(grid.shape, dtype=complex)
    )
    coeffs = []
    j = abs(sigma)
    while j.twice <= 2 * j_max:
        m = -j
        while m.twice <= j.twice:
            d = little_d(j, -m, sigma)
            basis = np.exp(1j * float(m) * grid.phi) * d(grid.theta)
            norm = grid.integrate(np.abs(basis) ** 2).real
            c = grid.integrate(np.conj(basis) * vals) / norm
            if abs(c) > 1e-13:
                coeffs.append((j, m, c))
            m = m + 1
        j = j + 1
    return coeffs, vals


def apply_parity(which: str, psi: SpinorField, grid: SphereGrid | None = None, j_max: int = 8,
                 tol: float = 1e-8) -> ParityResult:
    """Pi_sph (k = 0 only) or N_sph = pi x Pi_sph x P, with an eigen-solve on the grid."""
    grid = grid or SphereGrid(32, 32)
    if psi.size != 4:
        raise ValueError("parity acts on four-component fields")
    flipped = apply_P(psi).matrix(PI_SPH)
    outside = False
    if which == "Pi":
        if psi.k.twice != 0:
            raise ValueError(
                "Pi_sph does not commute with the Hamiltonian when k != 0: it maps D_{k-/+1/2} "
                "onto D_{-k-/+1/2}; use N instead"
            )
        result = flipped
    elif which == "N":
        if psi.gauge != "S":
            raise ValueError("N is implemented in the Schwinger gauge; transform the field first")
        shift = 2 * psi.k
        comps = []
        target = lower_indices(psi.k)
        for comp, sig in zip(flipped.components, target):
            source = sig - shift  # index the component carries after Pi x P
            coeffs, vals = _project_lower(comp, source, j_max, grid)
            new = ()
            for j, m, c in coeffs:
                if abs(sig.twice) > j.twice:
                    outside = True
                    # keep the formal, unshifted function
                    new += (Term(c, m.value, little_d(j, -m, source)),)
                else:
                    new += (Term(c, m.value, little_d(j, -m, sig)),)
            comps.append(new)
        result = flipped.with_components(comps)
    else:
        raise ValueError(f"unknown parity operator {which!r}")
    out, ref = result.sample(grid), psi.sample(grid)
    ev, resid = _rayleigh(out, ref, grid)
    if ev is None or resid > tol:
        verdict = "outside state space" if outside else "no eigenvector"
        return ParityResult(result, None, resid, outside, verdict)
    return ParityResult(result, ev, resid, outside, "eigenvector")
