"""Exact arithmetic substrate: rationals, polynomials, factorization, finite fields."""

from .factor import factor_fp, factor_pattern_fp, factor_q, is_irreducible_fp, is_irreducible_q
from .finite_field import FiniteField, FqElement, legendre
from .hensel import hensel_sqrt
from .poly import (
    ExactRational,
    UniPoly,
    discriminant,
    format_rational,
    inverse_mod,
    parse_rational,
    poly_gcd,
    poly_lcm,
    poly_xgcd,
    resultant,
    squarefree_decomposition,
    valuation_at,
)

__all__ = [
    "ExactRational", "UniPoly", "FiniteField", "FqElement", "discriminant", "factor_fp",
    "factor_pattern_fp", "factor_q", "format_rational", "hensel_sqrt", "inverse_mod",
    "is_irreducible_fp", "is_irreducible_q", "legendre", "parse_rational", "poly_gcd",
    "poly_lcm", "poly_xgcd", "resultant", "squarefree_decomposition", "valuation_at",
]
