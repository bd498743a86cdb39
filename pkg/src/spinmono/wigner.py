"""Wigner d/D functions as exact closed forms in c = cos(theta).

Convention: D^j_{a,b}(phi, theta, psi) = exp(-i a phi) d^j_{a,b}(theta) exp(-i b psi),
with d^{1/2}_{1/2,-1/2}(theta) = -sin(theta/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .numerics import HalfInt, RationalPoly, as_half, minus_one_pow


@dataclass(frozen=True)
class ThetaFunction:
    """overall * (1-c)**alpha * (1+c)**beta * poly(c), with c = cos(theta).

    Exponents are Fractions: half-integers for every d-function, quarter
    integers only in formal closed forms for disallowed (lambda, j) pairs.
    """

    alpha: Fraction
    beta: Fraction
    poly: RationalPoly
    overall: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", _to_frac(self.alpha))
        object.__setattr__(self, "beta", _to_frac(self.beta))

    def is_zero(self) -> bool:
        return self.poly.is_zero() or self.overall == 0

    def canonical(self) -> "ThetaFunction":
        """Pull factors of (1-c) and (1+c) out of the polynomial."""
        if self.poly.is_zero():
            return ThetaFunction(Fraction(0), Fraction(0), RationalPoly(), 0.0)
        p, a, b = self.poly, self.alpha, self.beta
        while (q := p.divide_linear(-1)) is not None and not p.is_zero():
            p, a = q, a + 1
        while (q := p.divide_linear(1)) is not None and not p.is_zero():
            p, b = q, b + 1
        return ThetaFunction(a, b, p, self.overall)

    def scaled(self, factor) -> "ThetaFunction":
        """Multiply by an exact rational."""
        return ThetaFunction(self.alpha, self.beta, self.poly * Fraction(factor), self.overall)

    def with_overall(self, factor: float) -> "ThetaFunction":
        return ThetaFunction(self.alpha, self.beta, self.poly, self.overall * factor)

    def times_poly(self, q: RationalPoly) -> "ThetaFunction":
        return ThetaFunction(self.alpha, self.beta, self.poly * q, self.overall).canonical()

    def times_sin_power(self, n) -> "ThetaFunction":
        """Multiply by sin(theta)**n = ((1-c)(1+c))**(n/2)."""
        h = _to_frac(n) / 2
        return ThetaFunction(self.alpha + h, self.beta + h, self.poly, self.overall)

    def times_factors(self, d_alpha, d_beta) -> "ThetaFunction":
        return ThetaFunction(
            self.alpha + _to_frac(d_alpha), self.beta + _to_frac(d_beta), self.poly, self.overall
        )

    def d_dc(self) -> "ThetaFunction":
        """Exact derivative with respect to c."""
        p, a, b = self.poly, self.alpha, self.beta
        new = (
            p * RationalPoly([-a, -a])  # -a (1+c) p
            + p * RationalPoly([b, -b])  # +b (1-c) p
            + p.derivative() * RationalPoly([1, 0, -1])
        )
        return ThetaFunction(a - 1, b - 1, new, self.overall).canonical()

    def d_dtheta(self) -> "ThetaFunction":
        """d/dtheta = -sin(theta) d/dc."""
        return self.d_dc().times_sin_power(1).scaled(-1)

    def reflect(self) -> "ThetaFunction":
        """F(pi - theta), i.e. c -> -c."""
        return ThetaFunction(self.beta, self.alpha, self.poly.reflect(), self.overall)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.is_zero():
            return np.zeros_like(theta)
        one_minus = 2.0 * np.sin(theta / 2) ** 2
        one_plus = 2.0 * np.cos(theta / 2) ** 2
        out = self.overall * self.poly(np.cos(theta))
        if self.alpha != 0:
            out = out * one_minus ** float(self.alpha)
        if self.beta != 0:
            out = out * one_plus ** float(self.beta)
        return out


def _to_frac(x) -> Fraction:
    if isinstance(x, HalfInt):
        return x.value
    return Fraction(x)


@dataclass(frozen=True)
class PhasedTheta:
    """exp(i * phase * phi) * theta(theta)"""

    phase: Fraction
    theta: ThetaFunction

    def __call__(self, theta, phi):
        return np.exp(1j * float(self.phase) * np.asarray(phi)) * self.theta(theta)


@dataclass(frozen=True)
class AngularMode:
    j: HalfInt
    m: HalfInt
    lam: HalfInt

    def constructible(self) -> bool:
        return (
            self.j.twice >= 0
            and abs(self.m.twice) <= self.j.twice
            and (self.j - self.m).is_integer()
            and (self.j - self.lam).is_integer()
        )


def _check_indices(j: HalfInt, a: HalfInt, b: HalfInt):
    if j.twice < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    if abs(a.twice) > j.twice or abs(b.twice) > j.twice:
        raise ValueError(f"indices ({a}, {b}) out of range for j = {j}")
    if not (j - a).is_integer() or not (j - b).is_integer():
        raise ValueError(f"j - a and j - b must be integers (j={j}, a={a}, b={b})")


def index_valid(j, a, b) -> bool:
    j, a, b = as_half(j), as_half(a), as_half(b)
    try:
        _check_indices(j, a, b)
    except ValueError:
        return False
    return True


@lru_cache(maxsize=4096)
def _little_d_cached(jt: int, at: int, bt: int) -> ThetaFunction:
    j, a, b = Fraction(jt, 2), Fraction(at, 2), Fraction(bt, 2)
    ji = lambda x: int(x)  # noqa: E731  exact: all arguments are integers here
    s_min = max(0, ji(b - a))
    s_max = min(ji(j + b), ji(j - a))
    q_min = abs(a - b)
    p_min = abs(a + b)
    poly = RationalPoly()
    for s in range(s_min, s_max + 1):
        p = 2 * j + b - a - 2 * s  # power of cos(theta/2)
        q = a - b + 2 * s  # power of sin(theta/2)
        denom = (
            math.factorial(ji(j + b - s))
            * math.factorial(s)
            * math.factorial(ji(a - b + s))
            * math.factorial(ji(j - a - s))
        )
        sign = -1 if ji(a - b + s) % 2 else 1
        term = RationalPoly.binomial_power(-1, ji((q - q_min) / 2)) * RationalPoly.binomial_power(
            1, ji((p - p_min) / 2)
        )
        poly = poly + term * Fraction(sign, denom)
    fact = (
        math.factorial(ji(j + a))
        * math.factorial(ji(j - a))
        * math.factorial(ji(j + b))
        * math.factorial(ji(j - b))
    )
    overall = math.sqrt(fact) * 2.0 ** (-float(j))
    return ThetaFunction(q_min / 2, p_min / 2, poly, overall).canonical()


def little_d(j, a, b) -> ThetaFunction:
    """Exact closed form of d^j_{a,b}(theta)."""
    j, a, b = as_half(j), as_half(a), as_half(b)
    _check_indices(j, a, b)
    return _little_d_cached(j.twice, a.twice, b.twice)


def wigner_d_sum(j, a, b, theta):
    """d^j_{a,b}(theta) from the factorial sum in half-angle trig functions.

    Floating-point route kept separate from the rational closed form.
    """
    j, a, b = (float(as_half(x)) for x in (j, a, b))
    theta = np.asarray(theta, dtype=float)
    cs, sn = np.cos(theta / 2), np.sin(theta / 2)
    pref = math.sqrt(
        math.gamma(j + a + 1) * math.gamma(j - a + 1) * math.gamma(j + b + 1) * math.gamma(j - b + 1)
    )
    out = np.zeros_like(theta)
    s_min = int(round(max(0.0, b - a)))
    s_max = int(round(min(j + b, j - a)))
    for s in range(s_min, s_max + 1):
        den = (
            math.gamma(j + b - s + 1) * math.gamma(s + 1) * math.gamma(a - b + s + 1) * math.gamma(j - a - s + 1)
        )
        sign = (-1) ** int(round(a - b + s))
        out = out + sign * pref / den * cs ** int(round(2 * j + b - a - 2 * s)) * sn ** int(round(a - b + 2 * s))
    return out


def big_D(j, a, b, phi, theta, psi=0.0):
    j, a, b = as_half(j), as_half(a), as_half(b)
    d = little_d(j, a, b)(theta)
    return np.exp(-1j * float(a) * np.asarray(phi)) * d * np.exp(-1j * float(b) * np.asarray(psi))


def D_lower(j, m, sigma, theta, phi):
    """D^j_{-m,sigma}(phi, theta, 0); zero when sigma is out of range."""
    j, m, sigma = as_half(j), as_half(m), as_half(sigma)
    if abs(sigma.twice) > j.twice:
        return np.zeros(np.broadcast(np.asarray(theta), np.asarray(phi)).shape, dtype=complex)
    return big_D(j, -m, sigma, phi, theta)


def d_norm(j) -> float:
    """Integral of d^2 over c in [-1, 1]."""
    return 2.0 / (2 * float(as_half(j)) + 1)


def phi_jm(lam, j, m, theta, phi):
    """Unit-normalized eigenfunction of J^lam_i with quantum numbers (j, m).

    Built as (-1)^(j-m) sqrt((2j+1)/4pi) D^j_{-m,-lam}(phi, theta, 0). The lower
    index carries -lam because the operators J^lam = l + lam (cos phi, sin phi)/sin
    theta annihilate sin^j theta ((1+c)/(1-c))^(lam/2) at the top of the ladder.
    """
    from .pauli import is_allowed

    lam, j, m = as_half(lam), as_half(j), as_half(m)
    verdict = is_allowed(lam, j)
    if not verdict.allowed:
        raise ValueError(f"(lambda={lam}, j={j}) is not allowed: {verdict.reason}")
    if abs(m.twice) > j.twice or not (j - m).is_integer():
        raise ValueError(f"invalid m = {m} for j = {j}")
    norm = math.sqrt((2 * float(j) + 1) / (4 * math.pi))
    return norm * minus_one_pow(j - m).real * big_D(j, -m, -lam, phi, theta)


def ladder_step(pt: PhasedTheta, lam, sign: int, mu=0) -> PhasedTheta:
    """Apply J_+ (sign=+1) or J_- (sign=-1) exactly.

    J_pm = exp(pm i phi) [pm d_theta + i cot(theta) d_phi + (lam + mu c)/sin(theta)];
    mu = 0 in the Schwinger gauge.
    """
    F, M = pt.theta, pt.phase
    lam, mu = _to_frac(lam), _to_frac(mu)
    a, b, p = F.alpha, F.beta, F.poly
    # -/+ sin * dF/dc and (lam + (mu - M) c)/sin share exponents (alpha-1/2, beta-1/2)
    deriv = (
        p * RationalPoly([-a, -a]) + p * RationalPoly([b, -b]) + p.derivative() * RationalPoly([1, 0, -1])
    )
    new = deriv * (-sign) + p * RationalPoly([lam, mu - M])
    out = ThetaFunction(a - Fraction(1, 2), b - Fraction(1, 2), new, F.overall).canonical()
    return PhasedTheta(M + sign, out)


def highest_weight(lam, j) -> PhasedTheta:
    """Unit-norm top state exp(i j phi) sin^j theta ((1+c)/(1-c))^(lam/2)."""
    lam, j = as_half(lam), as_half(j)
    a = (j - lam).value / 2
    b = (j + lam).value / 2
    # 2 pi * int (1-c)^(j-lam) (1+c)^(j+lam) dc = 2 pi 2^(2j+1) B(j-lam+1, j+lam+1)
    jf, lf = float(j), float(lam)
    norm2 = (
        2 * math.pi * 2 ** (2 * jf + 1)
        * math.gamma(jf - lf + 1) * math.gamma(jf + lf + 1) / math.gamma(2 * jf + 2)
    )
    return PhasedTheta(j.value, ThetaFunction(a, b, RationalPoly.one(), 1 / math.sqrt(norm2)))


def ladder_construct(lam, j, m) -> PhasedTheta:
    """Phi^lam_{jm} by lowering the top state (j - m) times with the exact J_-."""
    from .pauli import is_allowed

    lam, j, m = as_half(lam), as_half(j), as_half(m)
    verdict = is_allowed(lam, j)
    if not verdict.allowed:
        raise ValueError(f"(lambda={lam}, j={j}) is not allowed: {verdict.reason}")
    if abs(m.twice) > j.twice or not (j - m).is_integer():
        raise ValueError(f"m = {m} is not reachable from j = {j}")
    pt = highest_weight(lam, j)
    for _ in range(int(j - m)):
        pt = ladder_step(pt, lam, -1)
    jm, jp, jj = int(j - m), int(j + m), int(2 * j)
    scale = math.sqrt(math.factorial(jp) / (math.factorial(jm) * math.factorial(jj)))
    return PhasedTheta(pt.phase, pt.theta.with_overall(scale))


@dataclass(frozen=True)
class RecursionCoefficients:
    a: float
    b: float
    c: float
    degenerate: bool = False


def theta_recursions(j, m, k) -> RecursionCoefficients:
    """Coefficients linking D_{k-3/2}, D_{k-1/2}, D_{k+1/2}, D_{k+3/2} (D_s = D^j_{-m,s}).

        d_theta D_{k+1/2} = a D_{k-1/2} - b D_{k+3/2}
        (-m - (k+1/2) c)/s D_{k+1/2} = -a D_{k-1/2} - b D_{k+3/2}
        d_theta D_{k-1/2} = c D_{k-3/2} - a D_{k+1/2}
        (-m - (k-1/2) c)/s D_{k-1/2} = -c D_{k-3/2} - a D_{k+1/2}

    At j = |k| - 1/2 only one of D_{k -/+ 1/2} exists and the relations reduce
    to a single pair with coefficient sqrt(2|k| - 1)/2.
    """
    j, m, k = as_half(j), as_half(m), as_half(k)
    if (j - k - HalfInt(1)).twice % 2 or (j - m).twice % 2:
        raise ValueError(f"j - k - 1/2 and j - m must be integers (j={j}, m={m}, k={k})")
    if abs(m.twice) > j.twice:
        raise ValueError(f"|m| > j for m={m}, j={j}")
    if j.twice < abs(k.twice) - 1:
        raise ValueError(f"j = {j} below j_min = |k| - 1/2 for k = {k}")
    jf, kf = float(j), float(k)

    def coef(x):
        return 0.5 * math.sqrt(x) if x > 0 else 0.0

    a = coef((jf + 0.5) ** 2 - kf ** 2)
    b = coef((jf - kf - 0.5) * (jf + kf + 1.5))
    c = coef((jf + kf - 0.5) * (jf - kf + 1.5))
    degenerate = j.twice == abs(k.twice) - 1
    return RecursionCoefficients(a, b, c, degenerate)


def recursion_residuals(j, m, k, theta) -> tuple[float, float, float, float]:
    """Max residuals of the four identities at the given theta values."""
    j, m, k = as_half(j), as_half(m), as_half(k)
    co = theta_recursions(j, m, k)
    theta = np.asarray(theta, dtype=float)
    half = HalfInt(1)

    def d(sig):
        return little_d(j, -m, sig) if index_valid(j, -m, sig) else None

    def val(f):
        return f(theta) if f is not None else np.zeros_like(theta)

    def dval(f):
        return f.d_dtheta()(theta) if f is not None else np.zeros_like(theta)

    dm3, dm1, dp1, dp3 = d(k - 3 * half), d(k - half), d(k + half), d(k + 3 * half)
    s, c = np.sin(theta), np.cos(theta)
    mf, kf = float(m), float(k)
    r1 = dval(dp1) - (co.a * val(dm1) - co.b * val(dp3))
    r2 = (-mf - (kf + 0.5) * c) / s * val(dp1) - (-co.a * val(dm1) - co.b * val(dp3))
    r3 = dval(dm1) - (co.c * val(dm3) - co.a * val(dp1))
    r4 = (-mf - (kf - 0.5) * c) / s * val(dm1) - (-co.c * val(dm3) - co.a * val(dp1))
    return tuple(float(np.max(np.abs(r))) for r in (r1, r2, r3, r4))
