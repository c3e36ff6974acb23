"""Witt vectors, Frobenius modules and semistable cohomology over finite fields."""

from .errors import (
    FieldError,
    FrobWittError,
    InsufficientDepth,
    InvariantViolation,
    ParseError,
    ResourceBound,
    ShapeMismatch,
    WindowOverflow,
)
from .fields import FiniteField, get_field
from .galois import GaloisRing, GaloisScalar, get_ring
from .poly import Poly
from .witt import WittVector

__all__ = [
    "FieldError", "FrobWittError", "InsufficientDepth", "InvariantViolation", "ParseError",
    "ResourceBound", "ShapeMismatch", "WindowOverflow", "FiniteField", "get_field",
    "GaloisRing", "GaloisScalar", "get_ring", "Poly", "WittVector",
]

__version__ = "0.1.0"
