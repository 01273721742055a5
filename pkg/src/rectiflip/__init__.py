"""Flip and rotate reconfiguration of rectangulations and convex
point-set subdivisions: canonicalization with operation-count bounds,
an exact saturation auditor for the bit-reversal lower bound, and a
flip-graph explorer for small instances."""

from .core import (
    LEFT,
    RIGHT,
    BOTTOM,
    TOP,
    PointSet,
    Rectangulation,
    RSeg,
    all_horizontal,
    all_vertical,
    canonical_vertical,
    realize,
    validate,
    is_valid,
    faces,
    encode,
    decode,
    to_jsonable,
    from_jsonable,
    diagonal_points,
    permutation_points,
)

__all__ = [
    "LEFT",
    "RIGHT",
    "BOTTOM",
    "TOP",
    "PointSet",
    "Rectangulation",
    "RSeg",
    "all_horizontal",
    "all_vertical",
    "canonical_vertical",
    "realize",
    "validate",
    "is_valid",
    "faces",
    "encode",
    "decode",
    "to_jsonable",
    "from_jsonable",
    "diagonal_points",
    "permutation_points",
]
