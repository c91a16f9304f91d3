"""Exact rank bounds for elliptic curves over Q(T) via conic bundles.

Input curves have the shape y^2 = a3(T)x^3 + a2(T)x^2 + a1(T)x + a0(T)
with deg a_i <= 2. The package classifies the singular fibers of the
induced conic bundle and of the elliptic fibration, computes the
geometric rank by Shioda-Tate, the defect Df = delta - r (two ways),
the arithmetic orbit count delta_k, the bounds
delta_k >= r_k >= delta_k - Df, and the exact rank r_k when one of the
structured family rules applies.
"""

from .conic import ConicFiber, classify_conic_fibers, delta_epsilon
from .curve import (
    ConicForm,
    CurveInput,
    WeierstrassData,
    curve_from_a,
    curve_from_conic,
    parse_curve,
    weierstrass_invariants,
)
from .errors import (
    ConicRankError,
    ConsistencyError,
    ParseError,
    ValidationError,
    VerificationFailure,
)
from .kodaira import KodairaFiber, Place, elliptic_fibers, shioda_tate_rank
from .numfield import NumberField, QuadTower, is_square_nf, square_root_in_field
from .pipeline import Analysis, analyze
from .points import CurveOverFF, FFPoint, construct_point, verify_linear_relation
from .qpoly import QQ, Poly, factor, resultant
from .rank import RankReport, defect_table, delta_k, detect_family, rank_bounds

__all__ = [
    "Analysis",
    "ConicFiber",
    "ConicForm",
    "ConicRankError",
    "ConsistencyError",
    "CurveInput",
    "CurveOverFF",
    "FFPoint",
    "KodairaFiber",
    "NumberField",
    "ParseError",
    "Place",
    "Poly",
    "QQ",
    "QuadTower",
    "RankReport",
    "ValidationError",
    "VerificationFailure",
    "WeierstrassData",
    "analyze",
    "classify_conic_fibers",
    "construct_point",
    "curve_from_a",
    "curve_from_conic",
    "defect_table",
    "delta_epsilon",
    "delta_k",
    "detect_family",
    "elliptic_fibers",
    "factor",
    "is_square_nf",
    "parse_curve",
    "rank_bounds",
    "resultant",
    "shioda_tate_rank",
    "square_root_in_field",
    "verify_linear_relation",
    "weierstrass_invariants",
]

__version__ = "0.1.0"
