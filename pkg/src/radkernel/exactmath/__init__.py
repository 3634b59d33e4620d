"""Exact scalars, dense linear algebra, univariate polynomials and rational LP."""

from .fields import GF, QQ, Field, Mod, PrimeField, RationalField, field_from_json, is_prime
from .linalg import Matrix, Subspace, det_bareiss, det_cofactor, kernel_basis, rref, solve
from .lp import lp_feasible_max, simplex_max
from .poly import Poly, minimal_polynomial

__all__ = [
    "GF", "QQ", "Field", "Mod", "PrimeField", "RationalField", "field_from_json", "is_prime",
    "Matrix", "Subspace", "det_bareiss", "det_cofactor", "kernel_basis", "rref", "solve",
    "lp_feasible_max", "simplex_max", "Poly", "minimal_polynomial",
]
