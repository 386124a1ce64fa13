"""Zariski tangent spaces of affine varieties over finite fields, read as linear codes."""

from .codes import LinearCode, hamming_code
from .gf import Field, FieldElement, make_field
from .poly import MultiPoly, parse_poly
from .variety import AffineVariety

__all__ = ["AffineVariety", "Field", "FieldElement", "LinearCode", "MultiPoly", "hamming_code",
           "make_field", "parse_poly"]
__version__ = "0.1.0"
