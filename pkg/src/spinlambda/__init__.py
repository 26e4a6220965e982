"""Exact lambda norms and spin norms of K-types over root-system pair data."""

from .norms import (
    ConsistencyError,
    CriterionVerdict,
    NormReport,
    corollary_check,
    criterion,
    intermediate,
    lambda_norm,
    norm_report,
    spin_norm,
)
from .pairdatum import DatumError, LatticeSpec, PairDatum, build_preset, validate

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "CriterionVerdict",
    "DatumError",
    "LatticeSpec",
    "NormReport",
    "PairDatum",
    "build_preset",
    "corollary_check",
    "criterion",
    "intermediate",
    "lambda_norm",
    "norm_report",
    "spin_norm",
    "validate",
]
