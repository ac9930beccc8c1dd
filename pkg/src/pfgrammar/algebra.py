"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A monomial is a tuple of ``(name, exponent)`` pairs sorted by variable name,
with no zero exponents.  Tuples compare lexicographically, which gives the
canonical total order on monomials used for serialization.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import ParseError, UnassignedVariable, ZeroToNegativePower

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]

ONE: Monomial = ()


def monomial(exps: Mapping[str, int] | Iterable[tuple[str, int]] = ()) -> Monomial:
    """Canonical monomial from an exponent map; zero exponents are dropped."""
    items = exps.items() if isinstance(exps, Mapping) else exps
    acc: dict[str, int] = {}
    for name, e in items:
        if not name:
            raise ValueError("variable names must be non-empty")
        acc[name] = acc.get(name, 0) + int(e)
    return tuple(sorted((v, e) for v, e in acc.items() if e != 0))


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out: list[tuple[str, int]] = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            if e1 + e2:
                out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _power(base: Fraction, e: int) -> Fraction:
    # 0**0 == 1 for nonnegative powers; negative powers of 0 are an error
    if e < 0 and base == 0:
        raise ZeroToNegativePower("zero raised to a negative power")
    return base**e


class Polynomial:
    """Immutable sparse Laurent polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> Polynomial:
        # trusted constructor: terms already canonical and nonzero
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, name: str, exponent: int = 1) -> Polynomial:
        return cls({monomial({name: exponent}): 1})

    @classmethod
    def const(cls, c: Scalar) -> Polynomial:
        return cls({ONE: c})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Scalar, Mapping[str, int]]]) -> Polynomial:
        acc: dict[Monomial, Fraction] = {}
        for c, exps in pairs:
            m = monomial(exps)
            acc[m] = acc.get(m, Fraction(0)) + Fraction(c)
        return cls(acc)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical (ascending) monomial order."""
        return sorted(self._terms.items())

    def variables(self) -> frozenset[str]:
        return frozenset(v for m in self._terms for v, _ in m)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == ONE for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise UnassignedVariable(f"polynomial is not constant: {self}")
        return self._terms.get(ONE, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.items())

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            other = other.constant_value()
        return self * (1 / Fraction(other))

    def __pow__(self, e: int) -> Polynomial:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers are only defined for single terms")
            ((m, c),) = self._terms.items()
            return Polynomial._raw({tuple((v, k * e) for v, k in m): _power(c, e)})
        result = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for m, c in sorted(self._terms.items(), reverse=True):
            factors = [v if e == 1 else f"{v}^{e}" for v, e in m]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag), *factors])
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {"coeff": str(c), "exps": {v: e for v, e in m}} for m, c in self.items()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> Polynomial:
        return cls.from_terms((Fraction(t["coeff"]), t["exps"]) for t in obj["terms"])

    @classmethod
    def from_json(cls, text: str) -> Polynomial:
        return cls.from_json_obj(json.loads(text))


ZERO = Polynomial()


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def coefficient_of(p: Polynomial, m: Monomial | Mapping[str, int]) -> Fraction:
    if isinstance(m, Mapping):
        m = monomial(m)
    return p.terms.get(m, Fraction(0))


def substitute(p: Polynomial, assignment: Mapping[str, Scalar]) -> Polynomial:
    """Replace the assigned variables by rational values; others stay symbolic.

    Raises ZeroToNegativePower when a variable carrying a negative exponent
    is assigned zero.
    """
    values = {v: Fraction(x) for v, x in assignment.items()}
    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        rest = []
        for v, e in m:
            if v in values:
                c *= _power(values[v], e)
            else:
                rest.append((v, e))
        if not c:
            continue
        key = tuple(rest)
        s = out.get(key, 0) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return Polynomial._raw(out)


@dataclass(frozen=True)
class MonomialFunctional:
    """Evaluation hook applied per monomial.

    ``fn`` receives the monomial's complete exponent map and returns a
    rational multiplier. ``consumes`` names the variables the hook stands in
    for; they are not looked up in the assignment.
    """

    consumes: frozenset[str]
    fn: Callable[[Mapping[str, int]], Scalar]

    def __call__(self, exps: Mapping[str, int]) -> Fraction:
        return Fraction(self.fn(exps))


NEUTRAL_HOOK = MonomialFunctional(frozenset(), lambda exps: 1)


def eval_with_functional(
    p: Polynomial,
    assignment: Mapping[str, Scalar],
    hook: MonomialFunctional = NEUTRAL_HOOK,
) -> Fraction:
    values = {v: Fraction(x) for v, x in assignment.items()}
    total = Fraction(0)
    for m, c in p.terms.items():
        exps = dict(m)
        for v, e in m:
            if v in hook.consumes:
                continue
            if v not in values:
                raise UnassignedVariable(f"variable {v!r} is neither assigned nor hook-consumed")
            c *= _power(values[v], e)
        if c:
            total += c * hook(exps)
    return total


# -- expression parsing -----------------------------------------------------


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def parse_expr(text: str) -> Polynomial:
    """Parse ``+ - * / ^`` expressions over identifiers and integer literals.

    Division is only allowed by a nonzero constant, so ``3/2*x`` works but
    ``x/y`` does not; write ``x*y^-1`` for Laurent terms.
    """
    src = text.strip().replace("^", "**")
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from exc
    return _eval_node(tree.body, text)


def _eval_node(node: ast.AST, text: str) -> Polynomial:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Polynomial.const(node.value)
    if isinstance(node, ast.Name):
        return Polynomial.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _eval_node(node.operand, text)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, text)
        if isinstance(node.op, ast.Pow):
            exponent = _eval_node(node.right, text)
            if not exponent.is_constant() or exponent.constant_value().denominator != 1:
                raise ParseError(f"exponent must be an integer in {text!r}")
            return left ** int(exponent.constant_value())
        right = _eval_node(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise ParseError(f"division only by nonzero constants in {text!r}")
            return left / right
    raise ParseError(f"unsupported syntax in {text!r}")
