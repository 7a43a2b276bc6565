"""Exact generalized Jordan forms and contragredient canonical forms."""

from .contra import (
    ContraBlock,
    ContraKind,
    ContraPair,
    ContraReport,
    RankProfile,
    contragredient_canonical,
    is_contra_equivalent,
    rank_profile,
)
from .factor import PrimePowerFactorization, factor
from .field import GF, QQ, FieldSpec, Scalar, parse_scalar
from .jordan import (
    GeneralizedJordanBlock,
    JordanForm,
    JordanReport,
    is_similar,
    jordan_canonical,
)
from .linalg import DualVector, Matrix, Subspace, minimal_polynomial
from .poly import Polynomial, parse_poly

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "ContraBlock",
    "ContraKind",
    "ContraPair",
    "ContraReport",
    "DualVector",
    "FieldSpec",
    "GeneralizedJordanBlock",
    "JordanForm",
    "JordanReport",
    "Matrix",
    "Polynomial",
    "PrimePowerFactorization",
    "RankProfile",
    "Scalar",
    "Subspace",
    "contragredient_canonical",
    "factor",
    "is_contra_equivalent",
    "is_similar",
    "jordan_canonical",
    "minimal_polynomial",
    "parse_poly",
    "parse_scalar",
    "rank_profile",
]
