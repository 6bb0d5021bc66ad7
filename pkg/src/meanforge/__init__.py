"""Asymptotic-expansion arithmetic for bivariate means.

Exact series tools for symmetric homogeneous means. The group and Gauss
symmetries are available both numerically and as expansions, and a
coefficient-comparison search recovers the L_c family.
"""

__version__ = "0.1.0"

from .poly import Poly, SymbolTable, NotDivisible  # noqa: E402
from .series import MeanSeries, PlainSeries, series_compose_means, series_mul, series_power, series_quotient  # noqa: E402
from .means import (  # noqa: E402
    ARITHMETIC,
    GEOMETRIC,
    HARMONIC,
    NumericMean,
    catalan,
    classic_series,
    lc_eval,
    lc_mean,
    lc_series,
)
from .symmetry import phi, phi_inverse, sigma_lc_closed, star, symmetry_S, symmetry_sigma  # noqa: E402
from .symseries import bS_coeffs, bSigma_coeffs, verify_c2_relation  # noqa: E402
from .discovery import check_hypothesis, run_discovery  # noqa: E402

__all__ = [
    "Poly",
    "SymbolTable",
    "NotDivisible",
    "MeanSeries",
    "PlainSeries",
    "series_compose_means",
    "series_mul",
    "series_power",
    "series_quotient",
    "ARITHMETIC",
    "GEOMETRIC",
    "HARMONIC",
    "NumericMean",
    "catalan",
    "classic_series",
    "lc_eval",
    "lc_mean",
    "lc_series",
    "phi",
    "phi_inverse",
    "sigma_lc_closed",
    "star",
    "symmetry_S",
    "symmetry_sigma",
    "bS_coeffs",
    "bSigma_coeffs",
    "verify_c2_relation",
    "check_hypothesis",
    "run_discovery",
]
