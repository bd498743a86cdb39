"""Pauli criterion for the J^lambda representations and Dirac charge quantization."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numerics import HalfInt, RationalPoly, SphereGrid, as_half, expand_binomial_product, fd_derivative

LAMBDA_NOT_HALF_INTEGER = "lambda_not_half_integer"
EXPONENTS_NOT_NONNEG_INTEGERS = "exponents_not_nonneg_integers"
OK = "ok"


@dataclass(frozen=True)
class CriterionVerdict:
    allowed: bool
    reason: str
    derivative_is_zero: bool


def pauli_derivative_is_zero(lam, j) -> bool:
    """Exact test of (d/dc)^(2j+1) [(1+c)^(j+lam) (1-c)^(j-lam)] == 0."""
    from .wigner import ThetaFunction

    lam, j = as_half(lam), as_half(j)
    order = int(2 * j.value + 1)
    plus, minus = j + lam, j - lam
    if plus.is_integer() and minus.is_integer() and plus.twice >= 0 and minus.twice >= 0:
        p = expand_binomial_product(int(plus), int(minus))
        return p.derivative(order).is_zero()
    f = ThetaFunction(minus.value, plus.value, RationalPoly.one())
    for _ in range(order):
        f = f.d_dc()
        if f.is_zero():
            return True
    return f.is_zero()


def is_allowed(lam, j, oracle: bool = True) -> CriterionVerdict:
    """Decide whether the J^lam family carries a finite representation of weight j."""
    try:
        lam = as_half(lam)
    except (ValueError, TypeError):
        return CriterionVerdict(False, LAMBDA_NOT_HALF_INTEGER, False)
    j = as_half(j)
    if j.twice < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    plus, minus = j + lam, j - lam
    allowed = plus.is_integer() and minus.is_integer() and plus.twice >= 0 and minus.twice >= 0
    zero = pauli_derivative_is_zero(lam, j) if oracle else allowed
    return CriterionVerdict(allowed, OK if allowed else EXPONENTS_NOT_NONNEG_INTEGERS, zero)


def allowed_j(lam, count: int) -> list[HalfInt]:
    lam = as_half(lam)
    if count < 1:
        raise ValueError("count must be >= 1")
    start = abs(lam)
    return [start + n for n in range(count)]


@dataclass(frozen=True)
class Quantization:
    valid: bool
    j_min: HalfInt
    j_list: list

    def __iter__(self):
        return iter((self.valid, self.j_min, self.j_list))


def spinor_quantization(k, count: int = 6) -> Quantization:
    """Allowed total angular momenta for a spinor with k = eg.

    The doublet lam = k -/+ 1/2 must satisfy the criterion for the same j,
    which forces 2k to be an integer and j >= |k| - 1/2. For k = 0 the free
    particle minimum 1/2 is returned.
    """
    k = as_half(k)
    j_min = HalfInt(1) if k.twice == 0 else abs(k) - HalfInt(1)
    return Quantization(True, j_min, [j_min + n for n in range(count)])


def formal_lowest(lam, j) -> "tuple[Fraction, object, float]":
    """Closed-form Phi^lam_{j,-j} from the lowering formula, evaluated formally.

    Returns (phase, ThetaFunction) with the derivative taken exactly even when
    the exponents are fractional.
    """
    from .wigner import ThetaFunction

    lam, j = as_half(lam), as_half(j)
    # (d/dc)^{2j} [(1+c)^{j+lam} (1-c)^{j-lam}]
    f = ThetaFunction((j - lam).value, (j + lam).value, RationalPoly.one())
    for _ in range(int(2 * j.value)):
        f = f.d_dc()
    # times sin^j theta (1-c)^{lam/2} (1+c)^{-lam/2}
    f = f.times_sin_power(j.value).times_factors(lam.value / 2, -lam.value / 2)
    return -j.value, f


def annihilation_residual(lam, j, grid: SphereGrid | None = None, h: float = 1e-3) -> float:
    """max|J_- Phi_{j,-j}| / max|Phi_{j,-j}| on the grid, with J_- applied by finite differences."""
    grid = grid or SphereGrid(64, 64)
    lam, j = as_half(lam), as_half(j)
    phase, f = formal_lowest(lam, j)
    theta = grid.theta_nodes
    lamf, mf = float(lam), float(phase)
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = f(theta)
        dth = fd_derivative(f, theta, h)
        # J_- (e^{i M phi} F) = e^{i(M-1)phi} [-F' - M cot F + lam/sin F]
        out = -dth + (lamf - mf * np.cos(theta)) / np.sin(theta) * vals
    scale = np.nanmax(np.abs(vals))
    if not np.isfinite(scale) or scale == 0:
        return math.inf
    return float(np.nanmax(np.abs(out)) / scale)
