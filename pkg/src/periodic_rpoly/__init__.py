"""Ordinary and periodic R-polynomials for finite and affine Weyl groups."""

from .affine import AffineElem, AffineRoot, format_element, parse_element, si_leq, si_length
from .laurent import IntLaurentPoly
from .rootsys import (
    CartanDatum,
    ReflectionOrder,
    RootSystem,
    WeylElem,
    build_root_system,
    default_reflection_order,
    reflection_order_from_reduced_word,
    root_system,
)

__version__ = "0.1.0"
