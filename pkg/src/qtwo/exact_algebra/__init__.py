"""Exact scalars, sparse graded polynomials, truncated series, curve rings."""
from .curve_ring import CurveRing, CurveRingElement, curve_ring_normalize, register_relation, registered_relations
from .linalg import graded_rank
from .poly import Poly, PolyRing, parse_poly, to_text
from .scalars import F3, F9, GF, QQ, ZZ, FFElem, W, WittElem, Zmod, witt_sqrt
from .series import TruncatedSeries

__all__ = [
    "CurveRing", "CurveRingElement", "curve_ring_normalize", "register_relation", "registered_relations",
    "graded_rank", "Poly", "PolyRing", "parse_poly", "to_text",
    "F3", "F9", "GF", "QQ", "ZZ", "FFElem", "W", "WittElem", "Zmod", "witt_sqrt",
    "TruncatedSeries",
]
