"""q-analogues counting parking functions by their number of ones."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import prod
from typing import Sequence

from .algebra import Polynomial, substitute
from .counting import factorial, multinomial, spec_compositions
from .errors import BadParameter, ModViolation, ShapeViolation
from .parking import enumerate_u_parking, ones_count, sorted_u_parking

Q = "q"
q = Polynomial.var(Q)


def from_dense(coeffs: Sequence) -> Polynomial:
    return Polynomial.from_terms((c, {Q: d}) for d, c in enumerate(coeffs))


def dense(p: Polynomial) -> list[Fraction]:
    """Coefficients lowest degree first."""
    if p.is_zero():
        return []
    degs = {}
    for m, c in p.terms.items():
        if m and (len(m) != 1 or m[0][0] != Q or m[0][1] < 0):
            raise ShapeViolation(f"not a polynomial in q: {p}")
        degs[m[0][1] if m else 0] = c
    return [degs.get(d, Fraction(0)) for d in range(max(degs) + 1)]


def at_one(p: Polynomial) -> Fraction:
    return substitute(p, {Q: 1}).constant_value()


def q_bruteforce(u: Sequence, *, max_enum: int | None = None) -> Polynomial:
    """``sum over u-parking c of q^(number of ones in c)``.

    Walks nondecreasing parking functions and weights each by its number of
    distinct rearrangements, all of which park and share the same ones count.
    """
    by_ones: Counter[int] = Counter()
    for s in sorted_u_parking(u, max_enum=max_enum):
        mult = Counter(s).values()
        by_ones[ones_count(s)] += factorial(len(s)) // prod(factorial(m) for m in mult)
    return Polynomial.from_terms((c, {Q: z}) for z, c in by_ones.items())


def q_enumerated(u: Sequence, *, max_enum: int | None = None) -> Polynomial:
    """Same polynomial summed term by term over :func:`enumerate_u_parking`."""
    by_ones = Counter(ones_count(c) for c in enumerate_u_parking(u, max_enum=max_enum))
    return Polynomial.from_terms((c, {Q: z}) for z, c in by_ones.items())


def q_classical(n: int) -> Polynomial:
    if n < 1:
        raise BadParameter("n must be positive")
    return q * (q + n) ** (n - 1)


def q_basic(a: int, b: int, n: int) -> Polynomial:
    """``(q + a - 1)(q + a - 1 + b n)^(n-1)`` for weights ``(a, b, ..., b)``."""
    if min(a, b, n) < 1:
        raise BadParameter("a, b, n must be positive")
    return (q + (a - 1)) * (q + (a - 1 + b * n)) ** (n - 1)


def q_lemma52(l: int, k) -> Polynomial:
    """``q (q + l k)^(l-1)`` for weights ``(1, k, ..., k)`` of length ``l``."""
    if l < 1 or k < 0:
        raise BadParameter("need l >= 1 and k >= 0")
    return q * (q + Fraction(k) * l) ** (l - 1)


def q_theorem24(a: int, b: int, d: int) -> Polynomial:
    """Spec-sum q-analogue for (da,db)-parking functions when ``a = 1 mod b``."""
    if min(a, b, d) < 1:
        raise BadParameter("a, b, d must be positive")
    if (a - 1) % b:
        raise ModViolation(f"{a} is not 1 mod {b}")
    r = Fraction(a - 1, b)
    total = Polynomial()
    for J in spec_compositions(d, b):
        j1 = J[0]
        tail = prod((Fraction(1 + j * r) ** (j - 1) for j in J[1:]), start=Fraction(1))
        total += multinomial(J) * tail * q * (q + j1 * r) ** (j1 - 1)
    return total


def q_final_corollary(b: int, d: int) -> Polynomial:
    """``sum_{J in spec(d,b)} multinomial(J) q^(j_1)``."""
    if min(b, d) < 1:
        raise BadParameter("b, d must be positive")
    return Polynomial.from_terms((multinomial(J), {Q: J[0]}) for J in spec_compositions(d, b))


def human(p: Polynomial) -> str:
    return str(p)


def dense_strings(p: Polynomial) -> list[str]:
    return [str(c) for c in dense(p)]
