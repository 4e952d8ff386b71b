"""Kazhdan-Lusztig combinatorics of finite Coxeter systems.

Computes the KL basis and its structure constants, the cell decomposition
with Lusztig's a-function and Duflo involutions, the asymptotic (fusion)
algebra of each diagonal H-cell, and the resulting classification data for
simple transitive 2-representations, per finite type.
"""

from .budget import Budget
from .coxeter import CoxeterSystem, CoxeterType, Element, build_system
from .errors import (
    BudgetExceeded,
    CorruptCache,
    HeckeCellsError,
    PropertyViolation,
    UnrecognizedRing,
    UnsupportedType,
    VersionMismatch,
)
from .laurent import LaurentPoly

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExceeded",
    "CorruptCache",
    "CoxeterSystem",
    "CoxeterType",
    "Element",
    "HeckeCellsError",
    "LaurentPoly",
    "PropertyViolation",
    "UnrecognizedRing",
    "UnsupportedType",
    "VersionMismatch",
    "build_system",
]
