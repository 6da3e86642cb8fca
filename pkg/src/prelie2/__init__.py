"""Exact-rational toolkit for 2-term pre-Lie structures and their friends.

Everything is stored as structure-constant tensors over the rationals; every
defining identity is checked as a bit-exact equality.  See the README for the
module map and the CLI.
"""

from .scalar_tensor import (
    MultiMap,
    Space,
    ml_apply,
    ml_compose_linear,
    ml_skew_in,
    nullspace,
)
from .report import InvalidStructureError, ValidationReport, Violation

__version__ = "0.1.0"

__all__ = [
    "MultiMap",
    "Space",
    "ml_apply",
    "ml_compose_linear",
    "ml_skew_in",
    "nullspace",
    "InvalidStructureError",
    "ValidationReport",
    "Violation",
    "__version__",
]
