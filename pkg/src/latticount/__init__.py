"""Exact lattice point counts in integer dilates of rational polygons."""

from .dedekind import sigma_fast, sigma_naive
from .errors import (
    DegenerateArea,
    FitMismatch,
    InvalidPolygon,
    LatticountError,
    NotCoprime,
    ParseError,
    SelfIntersecting,
    TooFewVertices,
)
from .geometry import RationalPoint
from .lattice_count import RationalRect, RightTriangleSpec, brute_force_count
from .polygon import (
    QuasiPolynomial2,
    RationalPolygon,
    area,
    count_boundary,
    count_closure,
    count_interior,
    ehrhart,
    validate,
)

__all__ = [
    "DegenerateArea",
    "FitMismatch",
    "InvalidPolygon",
    "LatticountError",
    "NotCoprime",
    "ParseError",
    "QuasiPolynomial2",
    "RationalPoint",
    "RationalPolygon",
    "RationalRect",
    "RightTriangleSpec",
    "SelfIntersecting",
    "TooFewVertices",
    "area",
    "brute_force_count",
    "count_boundary",
    "count_closure",
    "count_interior",
    "ehrhart",
    "sigma_fast",
    "sigma_naive",
    "validate",
]
