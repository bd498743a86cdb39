"""Exact half-integers, rational polynomials in c = cos(theta), quadrature grids."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """A value n/2 stored as the integer n."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, (int, np.integer)) or isinstance(self.twice, bool):
            raise TypeError(f"twice_value must be an integer, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @property
    def twice_value(self) -> int:
        return self.twice

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(self.twice - other.twice)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(other.twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __mul__(self, n):
        if isinstance(n, (int, np.integer)) and not isinstance(n, bool):
            return HalfInt(self.twice * int(n))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.twice == other.twice

    def __hash__(self):
        return hash(("HalfInt", self.twice))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.twice < other.twice

    def __float__(self):
        return self.twice / 2

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __str__(self):
        return str(self.twice // 2) if self.is_integer() else f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"


def _coerce(x):
    if isinstance(x, HalfInt):
        return x
    try:
        return as_half(x)
    except (TypeError, ValueError):
        return NotImplemented


def half_from(numerator: int, denominator: int = 1) -> HalfInt:
    if denominator not in (1, 2):
        raise ValueError(f"denominator must be 1 or 2, got {denominator}")
    return HalfInt(int(numerator) * (2 // denominator))


def as_half(x) -> HalfInt:
    """Coerce ints, Fractions, exact floats and strings like '3/2' to HalfInt."""
    if isinstance(x, HalfInt):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a quantum number")
    if isinstance(x, str):
        s = x.strip()
        try:
            q = Fraction(s)
        except ValueError:
            raise ValueError(f"cannot parse {x!r} as a fraction") from None
        if "." in s or "e" in s.lower():
            raise ValueError(f"quantum numbers must be exact fractions, got {x!r}")
        return as_half(q)
    if isinstance(x, (int, np.integer)):
        return HalfInt(2 * int(x))
    if isinstance(x, Rational):
        q = Fraction(x) * 2
        if q.denominator != 1:
            raise ValueError(f"{x} is not a multiple of 1/2")
        return HalfInt(q.numerator)
    if isinstance(x, (float, np.floating)):
        t = 2 * float(x)
        if not float(t).is_integer():
            raise ValueError(f"{x} is not a multiple of 1/2")
        return HalfInt(int(t))
    raise TypeError(f"cannot interpret {x!r} as a half-integer")


def minus_one_pow(x) -> complex:
    """(-1)**x read as exp(i*pi*x); exact for multiples of 1/2."""
    t = as_half(x).twice % 4
    return (1.0 + 0j, 1j, -1.0 + 0j, -1j)[t]


def _frac(x) -> Fraction:
    if isinstance(x, HalfInt):
        return x.value
    return Fraction(x)


class RationalPoly:
    """Polynomial in c with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def one(cls):
        return cls([1])

    @classmethod
    def linear(cls, a, b):
        """a + b*c"""
        return cls([a, b])

    @classmethod
    def binomial_power(cls, sign: int, n: int) -> "RationalPoly":
        """(1 + sign*c)**n for integer n >= 0."""
        if n < 0:
            raise ValueError("negative power")
        out = cls.one()
        base = cls([1, sign])
        for _ in range(n):
            out = out * base
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RationalPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalPoly):
            if self.is_zero() or other.is_zero():
                return RationalPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return RationalPoly(out)
        s = _frac(other)
        return RationalPoly(c * s for c in self.coeffs)

    __rmul__ = __mul__

    def derivative(self, order: int = 1) -> "RationalPoly":
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [i * cs[i] for i in range(1, len(cs))]
        return RationalPoly(cs)

    def reflect(self) -> "RationalPoly":
        """p(-c)"""
        return RationalPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def divide_linear(self, sign: int):
        """Exact quotient by (1 + sign*c), or None if it does not divide."""
        if self.is_zero():
            return RationalPoly()
        root = Fraction(-sign)
        a = self.coeffs
        n = len(a) - 1
        if n == 0:
            return None
        q = [Fraction(0)] * n
        q[n - 1] = a[n]
        for i in range(n - 1, 0, -1):
            q[i - 1] = a[i] + root * q[i]
        if a[0] + root * q[0] != 0:
            return None
        # p = (c - root) q and (1 + sign*c) = sign*(c - root)
        return RationalPoly(c * sign for c in q)

    def __call__(self, c):
        """Horner evaluation; exact for Fraction input, float otherwise."""
        if isinstance(c, Fraction):
            acc = Fraction(0)
            for a in reversed(self.coeffs):
                acc = acc * c + a
            return acc
        c = np.asarray(c, dtype=float)
        acc = np.zeros_like(c)
        for a in reversed(self.coeffs):
            acc = acc * c + float(a)
        return acc

    def integral(self, lo=-1, hi=1) -> Fraction:
        lo, hi = Fraction(lo), Fraction(hi)
        return sum(
            (a / (i + 1)) * (hi ** (i + 1) - lo ** (i + 1)) for i, a in enumerate(self.coeffs)
        ) or Fraction(0)

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"


def expand_binomial_product(plus_exp: int, minus_exp: int) -> RationalPoly:
    """(1 + c)**plus_exp * (1 - c)**minus_exp for nonnegative integer exponents."""
    return RationalPoly.binomial_power(1, plus_exp) * RationalPoly.binomial_power(-1, minus_exp)


def poly_derivative(p: RationalPoly, order: int) -> RationalPoly:
    return p.derivative(order)


def gauss_legendre(n: int) -> list[tuple[float, float]]:
    if n < 1:
        raise ValueError(f"need at least one node, got {n}")
    x, w = np.polynomial.legendre.leggauss(n)
    return list(zip(x.tolist(), w.tolist()))


class SphereGrid:
    """Tensor grid: Gauss-Legendre in cos(theta), uniform in phi.

    Nodes are ordered by increasing cos(theta), so reversing the theta axis
    maps theta -> pi - theta exactly.
    """

    def __init__(self, n_theta: int = 64, n_phi: int = 64):
        if n_theta < 1 or n_phi < 1:
            raise ValueError("grid sizes must be positive")
        x, w = np.polynomial.legendre.leggauss(n_theta)
        # leggauss nodes are symmetric up to rounding; enforce exact symmetry
        x = 0.5 * (x - x[::-1])
        w = 0.5 * (w + w[::-1])
        self.n_theta = n_theta
        self.n_phi = n_phi
        self.cos_nodes = x
        self.theta_weights = w
        self.theta_nodes = np.arccos(x)
        self.phi_nodes = 2 * np.pi * np.arange(n_phi) / n_phi
        self.phi_weights = np.full(n_phi, 2 * np.pi / n_phi)
        self.theta, self.phi = np.meshgrid(self.theta_nodes, self.phi_nodes, indexing="ij")
        self.weights = np.outer(self.theta_weights, self.phi_weights)

    @property
    def shape(self):
        return (self.n_theta, self.n_phi)

    def integrate(self, values) -> complex:
        """Integral over the sphere with measure sin(theta) dtheta dphi."""
        return np.sum(self.weights * values)

    def inner(self, a, b) -> complex:
        """<a, b> for 2- or 4-component fields stacked along axis 0, or scalars."""
        a, b = np.asarray(a), np.asarray(b)
        prod = np.conj(a) * b
        if prod.ndim == 3:
            prod = prod.sum(axis=0)
        return self.integrate(prod)

    def __repr__(self):
        return f"SphereGrid({self.n_theta}, {self.n_phi})"


def fd_derivative(f, x, h: float = 1e-3):
    """Eighth-order central difference of f at x."""
    c = (4 / 5, -1 / 5, 4 / 105, -1 / 280)
    acc = 0
    for i, ci in enumerate(c, start=1):
        acc = acc + ci * (f(x + i * h) - f(x - i * h))
    return acc / h
