"""Exhaustive generation of rectangulation classes by minimal jumps."""

from .core import (Rectangulation, canonical_code, from_code, make_row,
                   reflect, unit_square, validate)
from .tree import (BLOCK_ALIGNED, DIAGONAL, GENERIC, ClassSpec,
                   contains_pattern_full, delete, enumerate_brute, insert_at,
                   insertion_points, is_zigzag)

__all__ = [
    "Rectangulation", "canonical_code", "from_code", "make_row", "reflect",
    "unit_square", "validate", "ClassSpec", "GENERIC", "DIAGONAL",
    "BLOCK_ALIGNED", "insertion_points", "insert_at", "delete",
    "enumerate_brute", "contains_pattern_full", "is_zigzag",
]

__version__ = "0.1.0"
