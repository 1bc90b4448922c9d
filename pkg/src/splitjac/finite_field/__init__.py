"""Exact arithmetic in odd-characteristic finite fields and polynomials over them."""

from .embed import Embedding, embedding, extension
from .factor import (
    distinct_degree,
    equal_degree,
    factor,
    is_irreducible,
    odd_part,
    roots,
    squarefree_decomposition,
    squarefree_part,
)
from .field import (
    FieldElement,
    FiniteField,
    NotASquare,
    element_from_json,
    field_from_json,
    is_prime,
    make_field,
    quadratic_character,
    sqrt,
)
from .poly import Polynomial, RationalFunction, poly_gcd, poly_xgcd

__all__ = [
    "Embedding",
    "FieldElement",
    "FiniteField",
    "NotASquare",
    "Polynomial",
    "RationalFunction",
    "distinct_degree",
    "element_from_json",
    "embedding",
    "equal_degree",
    "extension",
    "factor",
    "field_from_json",
    "is_irreducible",
    "is_prime",
    "make_field",
    "odd_part",
    "poly_gcd",
    "poly_xgcd",
    "quadratic_character",
    "roots",
    "sqrt",
    "squarefree_decomposition",
    "squarefree_part",
]
