"""Curve limits, discontinuity witnesses, positivity certificates and p-adic evaluation."""

from ratcont.limits.certificates import (
    CONTINUOUS_AT_ORIGIN,
    INCONCLUSIVE,
    ContinuityConclusion,
    PositivityCertificate,
    certificate_report,
    certificate_residue,
    continuity_at_origin_by_degree,
    pure_power_certificate,
    verify_positivity_certificate,
)
from ratcont.limits.curves import (
    FINITE,
    INFINITY,
    MINUS_INFINITY,
    PLUS_INFINITY,
    REAL_ONE_SIDED,
    REAL_TWO_SIDED,
    UNDEFINED,
    VALUATION,
    Curve,
    DiscontinuityWitness,
    LimitResult,
    NotFound,
    curve_limit,
    discontinuity_search,
    extrapolate_to_zero,
    float_crosscheck,
    monomial_curves,
    sample_along,
    two_sided_limit,
)
from ratcont.limits.padic import PAdic, PAdicValue, padic_evaluate, valuation

__all__ = [
    "CONTINUOUS_AT_ORIGIN",
    "ContinuityConclusion",
    "Curve",
    "DiscontinuityWitness",
    "FINITE",
    "INCONCLUSIVE",
    "INFINITY",
    "LimitResult",
    "MINUS_INFINITY",
    "NotFound",
    "PAdic",
    "PAdicValue",
    "PLUS_INFINITY",
    "PositivityCertificate",
    "REAL_ONE_SIDED",
    "REAL_TWO_SIDED",
    "UNDEFINED",
    "VALUATION",
    "certificate_report",
    "certificate_residue",
    "continuity_at_origin_by_degree",
    "curve_limit",
    "discontinuity_search",
    "extrapolate_to_zero",
    "float_crosscheck",
    "monomial_curves",
    "padic_evaluate",
    "pure_power_certificate",
    "sample_along",
    "two_sided_limit",
    "valuation",
    "verify_positivity_certificate",
]
