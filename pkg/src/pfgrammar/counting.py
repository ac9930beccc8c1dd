"""Closed forms, inclusion-exclusion and cross-checks for parking-function counts."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Iterator, Sequence

from . import config
from .algebra import MonomialFunctional, Polynomial, eval_with_functional
from .errors import DegenerateParameter, GcdViolation, NonIntegerResult, ZeroArgument
from .grammar import derive_n, grammar_K
from .parking import ab_threshold_vector, enumerate_u_parking


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return 1 if n < 2 else n * factorial(n - 1)


def multinomial(parts: Sequence[int]) -> int:
    return factorial(sum(parts)) // prod(factorial(p) for p in parts)


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``n`` into positive parts (the empty one for ``n = 0``)."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first, *rest)


def weak_compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Length-``k`` tuples of nonnegative integers summing to ``n``, lexicographic."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in weak_compositions(n - first, k - 1):
            yield (first, *rest)


def spec_compositions(k: int, b: int) -> list[tuple[int, ...]]:
    """``J = (j_1..j_k)`` with ``j_1+..+j_t >= t b`` and total ``k b``."""
    out = []

    def rec(prefix: list[int], total: int):
        t = len(prefix)
        if t == k:
            if total == k * b:
                out.append(tuple(prefix))
            return
        lo = max(0, (t + 1) * b - total)
        hi = k * b - total
        if t == k - 1:
            lo = hi
        for j in range(lo, hi + 1):
            prefix.append(j)
            rec(prefix, total + j)
            prefix.pop()

    rec([], 0)
    return out


def _require_coprime(a: int, b: int):
    if gcd(a, b) != 1:
        raise GcdViolation(f"gcd({a},{b}) = {gcd(a, b)}")


def _require_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegerResult(f"{what} evaluated to non-integer {x}")
    return int(x)


def _pow(base: Fraction, e: int) -> Fraction:
    # (base)^(j-1) at j = 0 is the rational inverse of a nonzero base
    return Fraction(base) ** e


# -- basic counts -----------------------------------------------------------------


def count_basic(alpha, beta, n: int) -> Fraction:
    """``alpha (alpha + n beta)^(n-1)``; 1 when ``n = 0``."""
    if n == 0:
        return Fraction(1)
    alpha, beta = Fraction(alpha), Fraction(beta)
    return alpha * (alpha + n * beta) ** (n - 1)


def count_rational(a: int, b: int) -> int:
    _require_coprime(a, b)
    return a ** (b - 1)


def count_bruteforce(u: Sequence, *, max_enum: int | None = None) -> int:
    return len(enumerate_u_parking(u, max_enum=max_enum))


def count_u_incl_excl(u: Sequence) -> Fraction:
    """Signed sum over ordered set partitions, grouped by block sizes.

    For ``u = (u_1..u_n)`` and a composition ``(b_1..b_k)`` of ``n`` with
    partial sums ``s_i``, the term is
    ``multinomial * (-1)^k * prod_i (-u_{s_i + 1})^{b_{i+1}}``.
    """
    u = [Fraction(v) for v in u]
    n = len(u)
    total = Fraction(0)
    for parts in compositions(n):
        term = Fraction(multinomial(parts) * (-1) ** len(parts))
        s = 0
        for size in parts:
            term *= (-u[s]) ** size
            s += size
        total += term
    return total


def check_scaling(u: Sequence, k) -> bool:
    k = Fraction(k)
    return count_u_incl_excl([k * Fraction(v) for v in u]) == k ** len(u) * count_u_incl_excl(u)


# -- periodic (ka, kb) counts -----------------------------------------------------


def specsum_terms(a: int, b: int, k: int) -> list[tuple[tuple[int, ...], Fraction]]:
    """Each ``J`` in ``spec(k, b)`` with its term ``multinomial * prod (1 + j r)^(j-1)``."""
    r = Fraction(a - 1, b)
    return [
        (J, multinomial(J) * prod((_pow(1 + j * r, j - 1) for j in J), start=Fraction(1)))
        for J in spec_compositions(k, b)
    ]


def count_periodic_specsum(a: int, b: int, k: int) -> int:
    _require_coprime(a, b)
    total = sum((t for _, t in specsum_terms(a, b, k)), Fraction(0))
    return _require_int(total, f"spec-sum({a},{b},{k})")


def count_periodic_scaled(a: int, b: int, k: int) -> int:
    """Integer-coefficient form; equals ``b^(kb)`` times the spec-sum."""
    _require_coprime(a, b)
    total = Fraction(0)
    for J in spec_compositions(k, b):
        total += multinomial(J) * b**k * prod(
            (_pow(Fraction(b + j * (a - 1)), j - 1) for j in J), start=Fraction(1)
        )
    return _require_int(total, f"scaled spec-sum({a},{b},{k})")


def count_periodic_bruteforce(a: int, b: int, k: int, *, max_enum: int | None = None) -> int:
    _require_coprime(a, b)
    return count_bruteforce(ab_threshold_vector(a, b, k * b), max_enum=max_enum)


def exp_series(coeffs: Sequence[Fraction], order: int) -> list[Fraction]:
    """Coefficients ``e_0..e_order`` of ``exp(S)`` for ``S = sum_{m>=1} coeffs[m] z^m``.

    Uses ``n e_n = sum_{m=1}^n m s_m e_{n-m}`` from ``E' = S' E``; ``coeffs[0]``
    must be zero.
    """
    if coeffs and coeffs[0]:
        raise ValueError("series must have zero constant term")
    s = [Fraction(c) for c in coeffs] + [Fraction(0)] * (order + 1 - len(coeffs))
    e = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        e[n] = sum((m * s[m] * e[n - m] for m in range(1, n + 1)), Fraction(0)) / n
    return e


def count_periodic_egf(a: int, b: int, k: int) -> int:
    """Read the count off ``exp(sum_m (ma)^(mb-1) z^m / (mb)!)`` at ``z^k``, times ``(kb)!``."""
    _require_coprime(a, b)
    series = [Fraction(0)] + [
        Fraction((m * a) ** (m * b - 1), factorial(m * b)) for m in range(1, k + 1)
    ]
    return _require_int(exp_series(series, k)[k] * factorial(k * b), f"EGF({a},{b},{k})")


def step(x) -> int:
    return 1 if x >= 0 else 0


def spec_hook(k: int, b: int) -> MonomialFunctional:
    """``prod_i eps(j_1 + .. + j_i - i b)`` where ``j_i`` is the exponent of ``t_i``."""
    names = [f"t{i}" for i in range(1, k + 1)]

    def fn(exps) -> int:
        running = 0
        for i, name in enumerate(names, 1):
            running += exps.get(name, 0)
            if running < i * b:
                return 0
        return 1

    return MonomialFunctional(frozenset(names), fn)


def neutral_t_hook(k: int) -> MonomialFunctional:
    return MonomialFunctional(frozenset(f"t{i}" for i in range(1, k + 1)), lambda exps: 1)


def grammar_K_value(
    k: int,
    b: int,
    x_value,
    w_value,
    hook: MonomialFunctional | None = None,
    *,
    max_order: int | None = None,
) -> Fraction:
    """Evaluate ``D^{kb}(z_1..z_k)`` under grammar K at ``z=y=1``, ``x``, ``w`` and a t-hook."""
    start = prod((Polynomial.var(f"z{i}") for i in range(1, k + 1)), start=Polynomial.const(1))
    p = derive_n(grammar_K(k), start, k * b, max_order=max_order)
    assignment = {}
    for i in range(1, k + 1):
        assignment.update({f"z{i}": 1, f"y{i}": 1, f"x{i}": x_value, f"w{i}": w_value})
    return eval_with_functional(p, assignment, hook or spec_hook(k, b))


def count_periodic_grammar(a: int, b: int, k: int, *, max_order: int | None = None) -> int:
    """Scaled count from grammar K with ``x_i = b``, ``w_i = a - 1`` and the spec hook."""
    _require_coprime(a, b)
    return _require_int(grammar_K_value(k, b, b, a - 1, max_order=max_order), "grammar K")


def count_periodic_grammar_unscaled(a: int, b: int, k: int, *, max_order: int | None = None) -> int:
    """Same evaluation at ``x_i = 1``, ``w_i = (a-1)/b``; gives the count itself."""
    _require_coprime(a, b)
    value = grammar_K_value(k, b, 1, Fraction(a - 1, b), max_order=max_order)
    return _require_int(value, "grammar K (unscaled)")


def unconstrained_K_sum(a: int, b: int, k: int) -> Fraction:
    """Multinomial sum over all weak compositions of ``kb`` (no spec filter)."""
    total = Fraction(0)
    for J in weak_compositions(k * b, k):
        total += multinomial(J) * prod(
            (count_basic(b, a - 1, j) for j in J), start=Fraction(1)
        )
    return total


# -- Abel-type identities ----------------------------------------------------------


def abel_identity_sides(xs: Sequence, n: int) -> tuple[Fraction, Fraction]:
    """Both sides of the multivariate Abel identity, evaluated independently.

    Left: ``X (n + X)^(n-1)`` with ``X = sum xs``.  Right: sum over weak
    compositions of ``n`` of ``multinomial * prod x_j (x_j + i_j)^(i_j - 1)``,
    where an ``i_j = 0`` factor cancels to 1.
    """
    xs = [Fraction(x) for x in xs]
    if any(x == 0 for x in xs):
        raise ZeroArgument("all x_j must be nonzero")
    X = sum(xs, Fraction(0))
    lhs = X * (n + X) ** (n - 1)
    rhs = Fraction(0)
    for parts in weak_compositions(n, len(xs)):
        term = Fraction(multinomial(parts))
        for x, i in zip(xs, parts):
            if i:
                term *= x * (x + i) ** (i - 1)
        rhs += term
    return lhs, rhs


def cor3_sides(x, n: int, k: int) -> tuple[Fraction, Fraction]:
    """``k x^(n-1)`` against ``sum multinomial * prod (1 + i_j (x-k)/n)^(i_j - 1)``."""
    x = Fraction(x)
    if x == k:
        raise DegenerateParameter("x = k makes x_j = n/(x-k) undefined")
    lhs = k * x ** (n - 1)
    step_ = (x - k) / n
    rhs = Fraction(0)
    for parts in weak_compositions(n, k):
        term = Fraction(multinomial(parts))
        for i in parts:
            if i:
                term *= (1 + i * step_) ** (i - 1)
        rhs += term
    return lhs, rhs


def periodic_report(a: int, b: int, k: int, *, max_enum: int | None = None, max_order: int | None = None) -> dict:
    """All five computations of the periodic count; skipped ones map to ``None``."""
    out: dict[str, int | None] = {
        "specsum": count_periodic_specsum(a, b, k),
        "scaled/b^kb": None,
        "egf": count_periodic_egf(a, b, k),
        "grammar": None,
        "bruteforce": None,
    }
    scaled = count_periodic_scaled(a, b, k)
    out["scaled/b^kb"] = _require_int(Fraction(scaled, b ** (k * b)), "scaled / b^kb")
    if k * b <= config.max_order(max_order):
        g = count_periodic_grammar(a, b, k, max_order=max_order)
        out["grammar"] = _require_int(Fraction(g, b ** (k * b)), "grammar / b^kb")
    if k * b <= config.max_enum(max_enum):
        out["bruteforce"] = count_periodic_bruteforce(a, b, k, max_enum=max_enum)
    return out
