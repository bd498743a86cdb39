"""Spin-1/2 particle in an Abelian monopole field: harmonics, operators, radial systems, gauges."""
from .numerics import HalfInt, SphereGrid, as_half
from .pauli import is_allowed, spinor_quantization

__all__ = ["HalfInt", "SphereGrid", "as_half", "is_allowed", "spinor_quantization"]
__version__ = "0.1.0"
