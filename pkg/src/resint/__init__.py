"""Exact computations for residual intersections over graded polynomial rings."""

from .ring import Field, GradedRing, Polynomial, create_ring
from .groebner import GradedIdeal, ideal_quotient, intersect

__all__ = ["Field", "GradedRing", "Polynomial", "create_ring", "GradedIdeal", "ideal_quotient", "intersect"]
__version__ = "0.1.0"
