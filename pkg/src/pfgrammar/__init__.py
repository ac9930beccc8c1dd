"""Grammar derivatives and exact counting for vector and rational parking functions."""

from .algebra import (
    MonomialFunctional,
    Polynomial,
    coefficient_of,
    eval_with_functional,
    monomial,
    parse_expr,
    poly_add,
    poly_mul,
    substitute,
)
from .grammar import Grammar, builtin_grammar, derive, derive_n, parse_grammar

__all__ = [
    "Grammar",
    "MonomialFunctional",
    "Polynomial",
    "builtin_grammar",
    "coefficient_of",
    "derive",
    "derive_n",
    "eval_with_functional",
    "monomial",
    "parse_expr",
    "parse_grammar",
    "poly_add",
    "poly_mul",
    "substitute",
]
