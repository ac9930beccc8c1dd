"""Context-free grammars as substitution rules and their formal derivative.

A grammar maps each variable to a polynomial.  The induced operator ``D`` is
linear, obeys the Leibniz rule, sends ``v`` to its rule and every variable
without a rule to zero.  Integer powers, negative ones included, follow the
chain rule ``D(v^n) = n v^(n-1) D(v)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from types import MappingProxyType
from typing import Mapping

from . import config
from .algebra import Monomial, Polynomial, mono_mul, parse_expr, substitute
from .errors import BadParameter, OrderTooLarge, ParseError, ShapeViolation, UnknownGrammar


@dataclass(frozen=True, eq=False)
class Grammar:
    rules: Mapping[str, Polynomial] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rules", MappingProxyType(dict(self.rules)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return dict(self.rules) == dict(other.rules)

    def rename(self, mapping: Mapping[str, str]) -> Grammar:
        """Rename variables in rule heads and bodies."""

        def ren(p: Polynomial) -> Polynomial:
            return Polynomial.from_terms(
                (c, {mapping.get(v, v): e for v, e in m}) for m, c in p.terms.items()
            )

        return Grammar({mapping.get(v, v): ren(rhs) for v, rhs in self.rules.items()}, self.name)

    def restrict(self, variables) -> Grammar:
        keep = set(variables)
        return Grammar({v: r for v, r in self.rules.items() if v in keep}, self.name)

    def to_text(self) -> str:
        return "".join(f"{v} -> {self.rules[v]}\n" for v in sorted(self.rules))


def parse_grammar(text: str) -> Grammar:
    """Read ``<var> -> <expression>`` lines; ``#`` starts a comment."""
    rules: dict[str, Polynomial] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition("->")
        head = head.strip()
        if not sep or not head.isidentifier():
            raise ParseError(f"line {lineno}: expected '<var> -> <expression>', got {raw!r}")
        if head in rules:
            raise ParseError(f"line {lineno}: duplicate rule for {head!r}")
        rules[head] = parse_expr(body)
    return Grammar(rules)


# -- derivative ---------------------------------------------------------------


def _derive_monomial(rules: Mapping[str, Polynomial], m: Monomial, c: Fraction, out: dict):
    for idx, (v, e) in enumerate(m):
        rhs = rules.get(v)
        if rhs is None or rhs.is_zero():
            continue
        lowered = m[:idx] + ((v, e - 1),) + m[idx + 1 :] if e != 1 else m[:idx] + m[idx + 1 :]
        scale = c * e
        for rm, rc in rhs.terms.items():
            key = mono_mul(lowered, rm)
            s = out.get(key, 0) + scale * rc
            if s:
                out[key] = s
            else:
                out.pop(key, None)


def derive(g: Grammar, p: Polynomial) -> Polynomial:
    out: dict = {}
    for m, c in p.terms.items():
        _derive_monomial(g.rules, m, c, out)
    return Polynomial(out)


def derive_n(g: Grammar, p: Polynomial, n: int, *, max_order: int | None = None) -> Polynomial:
    cap = config.max_order(max_order)
    if n < 0:
        raise BadParameter("derivative order must be nonnegative")
    if n > cap:
        raise OrderTooLarge(f"order {n} exceeds cap {cap}")
    for _ in range(n):
        p = derive(g, p)
    return p


def derive_sequence(g: Grammar, p: Polynomial, n: int, *, max_order: int | None = None) -> list[Polynomial]:
    """``[p, D p, ..., D^n p]``."""
    cap = config.max_order(max_order)
    if n > cap:
        raise OrderTooLarge(f"order {n} exceeds cap {cap}")
    seq = [p]
    for _ in range(n):
        seq.append(derive(g, seq[-1]))
    return seq


# -- built-in grammars --------------------------------------------------------

V = Polynomial.var


def _sum(names) -> Polynomial:
    return sum((V(n) for n in names), Polynomial())


def grammar_G() -> Grammar:
    A, S = V("A"), V("S")
    return Grammar({"A": A**3 * S, "S": A * S**2}, "G")


def grammar_H() -> Grammar:
    z, x, y, w = V("z"), V("x"), V("y"), V("w")
    return Grammar({"z": z * x * y, "x": x * y * w, "y": y**3 * w, "w": y * w**2}, "H")


def grammar_H_prime(k: int) -> Grammar:
    _check_positive(k=k)
    y, w = V("y"), V("w")
    rules = {"y": y**3 * w, "w": y * w**2}
    for i in range(1, k + 1):
        zi, xi = V(f"z{i}"), V(f"x{i}")
        rules[f"z{i}"] = zi * xi * y
        rules[f"x{i}"] = xi * y * w
    return Grammar(rules, f"Hprime:{k}")


def grammar_H1(a: int, b: int) -> Grammar:
    _check_positive(a=a, b=b)
    y = V("y")
    xs = _sum(f"x{i}" for i in range(1, a + 1))
    ws = _sum(f"w{j}" for j in range(1, b + 1))
    rules = {"z": V("z") * xs * y, "y": y**3 * ws}
    for i in range(1, a + 1):
        rules[f"x{i}"] = V(f"x{i}") * y * ws
    for j in range(1, b + 1):
        rules[f"w{j}"] = V(f"w{j}") * y * ws
    return Grammar(rules, f"H1:{a}:{b}")


def grammar_K(k: int) -> Grammar:
    _check_positive(k=k)
    rules: dict[str, Polynomial] = {}
    for i in range(1, k + 1):
        z, x, y, w, t = (V(f"{s}{i}") for s in "zxywt")
        rules[f"z{i}"] = z * x * y * t
        rules[f"x{i}"] = x * y * w * t
        rules[f"y{i}"] = y**3 * w * t
        rules[f"w{i}"] = y * w**2 * t
        rules[f"t{i}"] = Polynomial()
    return Grammar(rules, f"K:{k}")


def grammar_F(order: int) -> Grammar:
    """Faa di Bruno grammar ``f_i -> f_{i+1} g_1, g_i -> i g_{i+1}``.

    The family is infinite; only indices reachable within ``order``
    derivatives of ``f0`` are materialized.
    """
    if order < 0:
        raise BadParameter("order must be nonnegative")
    rules = {f"f{i}": V(f"f{i + 1}") * V("g1") for i in range(order + 1)}
    rules.update({f"g{i}": i * V(f"g{i + 1}") for i in range(1, order + 1)})
    return Grammar(rules, "F")


def _check_positive(**params):
    for key, val in params.items():
        if not isinstance(val, int) or val < 1:
            raise BadParameter(f"{key} must be a positive integer, got {val!r}")


_NAME_RE = re.compile(r"^(G|H|F|Hprime:\d+|H1:\d+:\d+|K:\d+)$")


def builtin_grammar(name: str, *params: int, order: int | None = None) -> Grammar:
    """Build one of the named grammars.

    ``name`` is either a bare family name with ``params`` (``"K", 2``) or a
    full name string (``"K:2"``, ``"H1:2:3"``).  ``order`` sizes grammar F.
    """
    if ":" in name:
        if params:
            raise BadParameter("give parameters either inline or positionally, not both")
        head, *rest = name.split(":")
        try:
            params = tuple(int(p) for p in rest)
        except ValueError as exc:
            raise UnknownGrammar(f"bad grammar name {name!r}") from exc
        name = head
    arity = {"G": 0, "H": 0, "F": 0, "Hprime": 1, "K": 1, "H1": 2}
    if name not in arity:
        raise UnknownGrammar(f"unknown grammar {name!r}")
    if len(params) != arity[name]:
        raise BadParameter(f"grammar {name} takes {arity[name]} parameter(s)")
    if name == "G":
        return grammar_G()
    if name == "H":
        return grammar_H()
    if name == "F":
        return grammar_F(config.max_order() if order is None else order)
    if name == "Hprime":
        return grammar_H_prime(*params)
    if name == "K":
        return grammar_K(*params)
    return grammar_H1(*params)


def is_builtin_name(text: str) -> bool:
    return bool(_NAME_RE.match(text))


# -- coefficient extraction ---------------------------------------------------


def tree_coefficient_table(n: int, *, max_order: int | None = None) -> dict[int, int]:
    """``{k: T(n+1, k)}`` read off ``D^n(S)`` under grammar G."""
    if n < 1:
        raise BadParameter("n must be positive")
    p = derive_n(grammar_G(), V("S"), n, max_order=max_order)
    table: dict[int, int] = {}
    for m, c in p.terms.items():
        exps = dict(m)
        k = exps.get("A", 0) - n
        if set(exps) != {"A", "S"} or exps["S"] != n + 1 or not 0 <= k <= n:
            raise ShapeViolation(f"unexpected monomial {m} in D^{n}(S)")
        table[k] = _as_int(c)
    return dict(sorted(table.items()))


def planted_forest_coefficients(n: int, *, max_order: int | None = None) -> dict[int, int]:
    """``{k: p_k(n)}`` from ``D^n(z)|_{y=1}`` under grammar H."""
    if n < 1:
        raise BadParameter("n must be positive")
    p = substitute(derive_n(grammar_H(), V("z"), n, max_order=max_order), {"y": 1})
    table: dict[int, int] = {}
    for m, c in p.terms.items():
        exps = dict(m)
        k = exps.get("x", 0)
        ok = (
            set(exps) <= {"x", "w", "z"}
            and exps.get("z") == 1
            and 1 <= k <= n
            and exps.get("w", 0) == n - k
        )
        if not ok:
            raise ShapeViolation(f"unexpected monomial {m} in D^{n}(z)|y=1")
        table[k] = _as_int(c)
    return dict(sorted(table.items()))


def planted_forest_closed_form(n: int, k: int) -> int:
    return comb(n - 1, k - 1) * n ** (n - k)


def faa_di_bruno_coefficients(k: int, *, max_order: int | None = None) -> dict[tuple[int, ...], int]:
    """``{(t_1..t_k): coeff}`` for the terms ``f_t g_1^t_1 ... g_k^t_k`` of ``D^k(f0)``."""
    if k < 1:
        raise BadParameter("k must be positive")
    p = derive_n(grammar_F(k), V("f0"), k, max_order=max_order)
    table: dict[tuple[int, ...], int] = {}
    for m, c in p.terms.items():
        exps = dict(m)
        fs = [v for v in exps if v.startswith("f")]
        if len(fs) != 1 or exps[fs[0]] != 1:
            raise ShapeViolation(f"expected exactly one f-variable in {m}")
        ts = [0] * k
        for v, e in exps.items():
            if v.startswith("g"):
                idx = int(v[1:])
                if not 1 <= idx <= k or e < 0:
                    raise ShapeViolation(f"unexpected factor {v}^{e} in {m}")
                ts[idx - 1] = e
        t = int(fs[0][1:])
        if sum(ts) != t or sum((i + 1) * x for i, x in enumerate(ts)) != k:
            raise ShapeViolation(f"monomial {m} violates the cycle-type constraints")
        table[tuple(ts)] = _as_int(c)
    return dict(sorted(table.items()))


def cycle_type_count(ts: tuple[int, ...]) -> int:
    """``k! / (t_1! ... t_k! 1^t_1 ... k^t_k)``, the number of permutations with cycle type ``ts``."""
    k = sum((i + 1) * t for i, t in enumerate(ts))
    den = prod(factorial(t) * (i + 1) ** t for i, t in enumerate(ts))
    return factorial(k) // den


def _as_int(c: Fraction) -> int:
    if c.denominator != 1:
        raise ShapeViolation(f"non-integral coefficient {c}")
    return int(c)
