"""Spinor fields on the sphere: exact term sums or free-form callables."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .numerics import HalfInt, SphereGrid, as_half
from .wigner import ThetaFunction, index_valid, little_d

# Weyl basis: gamma^0 = [[0, I], [I, 0]], gamma^k = [[0, -sigma_k], [sigma_k, 0]]
SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)
GAMMA0 = np.block([[_Z2, _I2], [_I2, _Z2]])
GAMMA = (GAMMA0,) + tuple(np.block([[_Z2, -s], [s, _Z2]]) for s in SIGMA)

# i sigma^{12} = diag eigenvalues that tie components to D lower indices
SIGMA3_HALF = {4: (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(-1, 2)), 2: (Fraction(1, 2), Fraction(-1, 2))}

GAUGES = ("S", "D", "WY_N", "WY_S")


def gauge_shift(gauge: str, k) -> Fraction:
    """Azimuthal phase exponent mu with Psi^gauge = exp(i mu phi) Psi^S."""
    k = as_half(k).value
    if gauge == "S":
        return Fraction(0)
    if gauge in ("D", "WY_N"):
        return k
    if gauge == "WY_S":
        return -k
    raise ValueError(f"unknown gauge {gauge!r}")


@dataclass(frozen=True)
class Term:
    """coef * exp(i phase phi) * theta(theta)"""

    coef: complex
    phase: Fraction
    theta: ThetaFunction

    def __call__(self, theta, phi):
        return self.coef * np.exp(1j * float(self.phase) * np.asarray(phi)) * self.theta(theta)


Component = "tuple[Term, ...] | Callable"


@dataclass(frozen=True)
class SpinorField:
    components: tuple
    k: HalfInt = HalfInt(0)
    gauge: str = "S"
    frame: str = "weyl"
    tetrad: str = "spherical"
    labels: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "k", as_half(self.k))
        if self.gauge not in GAUGES:
            raise ValueError(f"unknown gauge {self.gauge!r}")
        if len(self.components) not in (2, 4):
            raise ValueError("a spinor field has 2 or 4 components")

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def analytic(self) -> bool:
        return all(isinstance(c, tuple) for c in self.components)

    def component_callable(self, i: int) -> Callable:
        comp = self.components[i]
        if isinstance(comp, tuple):
            return lambda th, ph, comp=comp: _eval_terms(comp, th, ph)
        return comp

    def evaluate(self, theta, phi) -> np.ndarray:
        theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
        return np.stack([np.asarray(self.component_callable(i)(theta, phi), dtype=complex) * np.ones(theta.shape) for i in range(self.size)])

    def sample(self, grid: SphereGrid) -> np.ndarray:
        return self.evaluate(grid.theta, grid.phi)

    def with_components(self, comps, **labels) -> "SpinorField":
        return replace(self, components=tuple(comps), labels=labels)

    def __add__(self, other: "SpinorField") -> "SpinorField":
        _check_compatible(self, other)
        return self.with_components(_add(a, b) for a, b in zip(self.components, other.components))

    def __sub__(self, other: "SpinorField") -> "SpinorField":
        return self + other.scaled(-1)

    def scaled(self, z: complex) -> "SpinorField":
        return self.with_components(_scale(c, z) for c in self.components)

    def matrix(self, M: np.ndarray) -> "SpinorField":
        """Apply a constant matrix across components."""
        M = np.asarray(M, dtype=complex)
        out = []
        for i in range(self.size):
            acc = ()
            for j in range(self.size):
                if M[i, j] != 0:
                    acc = _add(acc, _scale(self.components[j], M[i, j]))
            out.append(acc)
        return self.with_components(out)


def _eval_terms(terms, theta, phi):
    acc = np.zeros(np.broadcast(np.asarray(theta), np.asarray(phi)).shape, dtype=complex)
    for t in terms:
        acc = acc + t(theta, phi)
    return acc


def _scale(comp, z):
    if isinstance(comp, tuple):
        return tuple(Term(t.coef * z, t.phase, t.theta) for t in comp if t.coef * z != 0)
    return lambda th, ph: z * comp(th, ph)


def _add(a, b):
    if isinstance(a, tuple) and isinstance(b, tuple):
        return a + b
    fa = a if callable(a) else (lambda th, ph, t=a: _eval_terms(t, th, ph))
    fb = b if callable(b) else (lambda th, ph, t=b: _eval_terms(t, th, ph))
    return lambda th, ph: fa(th, ph) + fb(th, ph)


def _check_compatible(a: SpinorField, b: SpinorField):
    if a.size != b.size or a.k != b.k or a.gauge != b.gauge:
        raise ValueError("fields differ in size, k or gauge")


def lower_indices(k) -> tuple:
    """D lower index carried by each Weyl component: (k-1/2, k+1/2, k-1/2, k+1/2)."""
    k = as_half(k)
    h = HalfInt(1)
    return (k - h, k + h, k - h, k + h)


def d_term(j, m, sigma, coef: complex = 1.0, mu: Fraction = Fraction(0)) -> tuple:
    """coef * exp(i mu phi) D^j_{-m,sigma}(phi, theta, 0); empty when out of range."""
    j, m, sigma = as_half(j), as_half(m), as_half(sigma)
    if coef == 0 or not index_valid(j, -m, sigma):
        return ()
    return (Term(complex(coef), m.value + mu, little_d(j, -m, sigma)),)


def basis_spinor(k, j, m, f: Sequence[complex], gauge: str = "S") -> SpinorField:
    """(f1 D_{k-1/2}, f2 D_{k+1/2}, f3 D_{k-1/2}, f4 D_{k+1/2}), D_s = D^j_{-m,s}.

    Components whose D would fall outside |s| <= j are dropped (set to zero).
    """
    k, j, m = as_half(k), as_half(j), as_half(m)
    if j.twice < max(abs(k.twice) - 1, 0) or (j.twice < 1 and k.twice == 0):
        raise ValueError(f"j = {j} is below j_min for k = {k}")
    if not (j - k - HalfInt(1)).is_integer():
        raise ValueError(f"j - k - 1/2 must be an integer (j={j}, k={k})")
    if abs(m.twice) > j.twice or not (j - m).is_integer():
        raise ValueError(f"invalid m = {m} for j = {j}")
    if len(f) != 4:
        raise ValueError("need four amplitudes")
    mu = gauge_shift(gauge, k)
    comps = tuple(d_term(j, m, s, c, mu) for s, c in zip(lower_indices(k), f))
    return SpinorField(comps, k=k, gauge=gauge, labels={"j": j, "m": m, "f": tuple(complex(c) for c in f)})


def valid_js(k, j_max) -> list[HalfInt]:
    k = as_half(k)
    start = HalfInt(1) if k.twice == 0 else abs(k) - HalfInt(1)
    out, j = [], start
    while j.twice <= as_half(j_max).twice:
        out.append(j)
        j = j + 1
    return out


def random_spinor(k, rng: np.random.Generator, j_max=HalfInt(7), n_modes: int = 4, gauge: str = "S") -> SpinorField:
    """Random band-limited spinor: a sum of a few basis spinors with random amplitudes."""
    k = as_half(k)
    js = valid_js(k, j_max)
    acc = None
    for _ in range(n_modes):
        j = js[rng.integers(len(js))]
        m = -j + int(rng.integers(int(2 * j.value) + 1))
        f = rng.normal(size=4) + 1j * rng.normal(size=4)
        term = basis_spinor(k, j, m, f, gauge)
        acc = term if acc is None else acc + term
    return acc.with_components(acc.components)


def callable_spinor(funcs: Sequence[Callable], k=0, gauge: str = "S") -> SpinorField:
    """Free-form field from callables f(theta, phi)."""
    return SpinorField(tuple(funcs), k=k, gauge=gauge)


def max_norm(values: np.ndarray) -> float:
    return float(np.max(np.abs(values))) if values.size else 0.0
