"""Newton polygons, Ore's theorem and common index divisors of number fields."""

from .ore import (
    IndexDivisorVerdict,
    OreReport,
    dedekind_divides_index,
    index_divisor_verdict,
    ore_analysis,
    regularize_linear,
)
from .parse import parse_poly
from .polygon import NewtonPolygon, Side, phi_expand, phi_index, residual_poly
from .quintic import QuinticVerdict, quintic_verdict, thm_p2_condition, thm_p3_condition
from .zx import IntPoly, discriminant, resultant, vp

__all__ = [
    "IndexDivisorVerdict", "IntPoly", "NewtonPolygon", "OreReport", "QuinticVerdict", "Side",
    "dedekind_divides_index", "discriminant", "index_divisor_verdict", "ore_analysis",
    "parse_poly", "phi_expand", "phi_index", "quintic_verdict", "regularize_linear",
    "residual_poly", "resultant", "thm_p2_condition", "thm_p3_condition", "vp",
]
__version__ = "0.1.0"
