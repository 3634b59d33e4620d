"""Algebras with exact normal-form elements."""

from .core import Algebra, Element
from .io import make_algebra
from .kinds import (
    ExpPolyAlgebra,
    MonomialQuotient,
    NonReducedIdeal,
    StructureConstantAlgebra,
    WordQuotient,
    direct_product,
    matrix_algebra,
    parse_word,
    structure_constants_from,
)
from .nil import Nilpotency, is_nilpotent, nilpotency_index, nilradical, trace_form
from .parse import parse_element

__all__ = [
    "Algebra", "Element", "ExpPolyAlgebra", "MonomialQuotient", "NonReducedIdeal",
    "Nilpotency", "StructureConstantAlgebra", "WordQuotient", "direct_product",
    "is_nilpotent", "make_algebra", "matrix_algebra", "nilpotency_index", "nilradical",
    "parse_element", "parse_word", "structure_constants_from", "trace_form",
]
