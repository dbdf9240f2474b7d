"""Graded commutative algebra for long Bourbaki sequences of codimension-3 single spot ideals."""
from .config import EngineConfig
from .poly import PolynomialRing, parse_polynomial

__all__ = ["EngineConfig", "PolynomialRing", "parse_polynomial"]
__version__ = "0.1.0"
