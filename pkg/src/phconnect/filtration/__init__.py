"""
Vietoris-Rips filtration restricted to vertices and edges.
"""

from .complex import (
    FilteredComplex,
    FilteredEdge,
    build_vr,
    complex_at_radius,
    complex_from_json,
    complex_to_json,
)

__all__ = [
    "FilteredComplex",
    "FilteredEdge",
    "build_vr",
    "complex_at_radius",
    "complex_from_json",
    "complex_to_json",
]
