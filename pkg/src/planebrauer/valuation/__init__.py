"""Valuations along plane curves, residues and divisors of functions on curves."""

from .charts import Chart, ChartFailure, CommonComponent
from .curves import FALSE, TRUE, NotIrreducible, PlaneCurve, certify_irreducible, check_smooth
from .divisor import CurveDivisor, DegenerateCharts, divisor_min, powerproduct_divisor, to_common_chart
from .residue import (
    NONTRIVIAL,
    TRIVIAL,
    UNDECIDED,
    NonzeroValuation,
    PowerProduct,
    ResidueClass,
    class_triviality,
    compare_residues,
    curve_valuation,
    divisor_level_equal,
    divisor_on_curve,
    is_mth_power_on_rational_curve,
    residue_at_curve,
    strip_curve,
)

__all__ = [
    "Chart", "ChartFailure", "CommonComponent", "PlaneCurve", "certify_irreducible", "check_smooth",
    "NotIrreducible", "TRUE", "FALSE", "UNDECIDED",
    "CurveDivisor", "DegenerateCharts", "divisor_min", "powerproduct_divisor", "to_common_chart",
    "PowerProduct", "ResidueClass", "NonzeroValuation", "TRIVIAL", "NONTRIVIAL",
    "curve_valuation", "residue_at_curve", "divisor_on_curve", "is_mth_power_on_rational_curve",
    "class_triviality", "compare_residues", "divisor_level_equal", "strip_curve",
]
