"""Exact computation of Auslander-Reiten data for modules over truncated
triangular k-linear categories."""

from .exactla import Field, Matrix
from .lincat import LinCat, validate, opposite, hom_growth

__all__ = ["Field", "Matrix", "LinCat", "validate", "opposite", "hom_growth"]
__version__ = "0.1.0"
