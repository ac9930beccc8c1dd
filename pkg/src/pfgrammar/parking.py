"""Parking-function objects, predicates, enumeration and conversions.

Internally a parking function is a tuple of positive integers (1-indexed
"u-form").  The 0-indexed (a,b)-form only appears at the conversion
boundary.  Thresholds are compared exactly as rationals.
"""

from __future__ import annotations

import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from math import ceil, floor, gcd
from typing import Iterator, Sequence

from . import config
from .errors import (
    EntryOutOfRange,
    GcdViolation,
    LengthMismatch,
    ModViolation,
    NonIntegralShift,
    NotAParkingFunction,
    ParseError,
    TooLarge,
)

PFSeq = tuple[int, ...]
Thresholds = tuple[Fraction, ...]


def as_thresholds(values: Sequence) -> Thresholds:
    return tuple(Fraction(v) for v in values)


def prefix_sums(x: Sequence) -> Thresholds:
    return tuple(accumulate(Fraction(v) for v in x))


def is_u_parking(c: Sequence[int], u: Sequence) -> bool:
    if len(c) != len(u):
        raise LengthMismatch(f"sequence has length {len(c)}, thresholds {len(u)}")
    return all(ci <= ui for ci, ui in zip(sorted(c), u))


def is_x_parking(c: Sequence[int], x: Sequence) -> bool:
    if len(c) != len(x):
        raise LengthMismatch(f"sequence has length {len(c)}, weights {len(x)}")
    return is_u_parking(c, prefix_sums(x))


def _check_enum_size(n: int, max_enum: int | None):
    cap = config.max_enum(max_enum)
    if n > cap:
        raise TooLarge(f"length {n} exceeds the enumeration bound {cap}")


def enumerate_u_parking(u: Sequence, *, max_enum: int | None = None) -> list[PFSeq]:
    """All u-parking functions in lexicographic order.

    Depth-first over ``{1..floor(u_n)}^n``, pruning a prefix as soon as the
    remaining slots can no longer satisfy some threshold.
    """
    u = as_thresholds(u)
    n = len(u)
    _check_enum_size(n, max_enum)
    if n == 0:
        return [()]
    top = floor(u[-1])
    if top < 1:
        return []
    bounds = [floor(t) for t in u]
    if bounds[0] < 1:
        return []
    # need[v] = how many entries must be <= v for the sequence to park
    need = [0] * (top + 1)
    for i, bnd in enumerate(bounds, 1):
        if bnd >= 1:
            need[bnd] = max(need[bnd], i)
    for v in range(1, top + 1):
        need[v] = max(need[v], need[v - 1])
    # below[v] = entries placed so far with value <= v
    below = [0] * (top + 1)
    out: list[PFSeq] = []
    prefix: list[int] = []

    def feasible(remaining: int) -> bool:
        return all(below[v] + remaining >= need[v] for v in range(1, top + 1))

    def rec():
        remaining = n - len(prefix)
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for v in range(1, top + 1):
            for w in range(v, top + 1):
                below[w] += 1
            prefix.append(v)
            if feasible(remaining - 1):
                rec()
            prefix.pop()
            for w in range(v, top + 1):
                below[w] -= 1

    rec()
    return out


def sorted_u_parking(u: Sequence, *, max_enum: int | None = None) -> Iterator[PFSeq]:
    """Nondecreasing u-parking functions; every permutation of each is also one."""
    u = as_thresholds(u)
    n = len(u)
    _check_enum_size(n, max_enum)
    bounds = [floor(t) for t in u]

    def rec(prefix: list[int], lo: int):
        i = len(prefix)
        if i == n:
            yield tuple(prefix)
            return
        for v in range(lo, bounds[i] + 1):
            prefix.append(v)
            yield from rec(prefix, v)
            prefix.pop()

    yield from rec([], 1)


def specification(c: Sequence[int], m: int) -> tuple[int, ...]:
    """Multiplicities ``(j_1..j_m)`` of the values ``1..m`` in ``c``."""
    counts = [0] * m
    for v in c:
        if not 1 <= v <= m:
            raise EntryOutOfRange(f"entry {v} outside 1..{m}")
        counts[v - 1] += 1
    return tuple(counts)


def ones_count(c: Sequence[int]) -> int:
    return sum(1 for v in c if v == 1)


def ab_threshold_vector(a: int, b: int, length: int) -> tuple[int, ...]:
    """``u_{i+1} = 1 + floor(i*a/b)`` for ``i = 0..length-1``."""
    return tuple(1 + (i * a) // b for i in range(length))


def block_threshold_vector(b: int, d: int) -> tuple[int, ...]:
    """``(1,...,1, 2,...,2, ..., d,...,d)`` with ``b`` copies of each value."""
    return tuple(v for v in range(1, d + 1) for _ in range(b))


def basic_threshold_vector(alpha, beta, n: int) -> Thresholds:
    """Prefix sums of ``(alpha, beta, ..., beta)``."""
    return prefix_sums([alpha] + [beta] * (n - 1)) if n else ()


def ab_to_u_pf(c: Sequence[int]) -> PFSeq:
    if any(v < 0 for v in c):
        raise EntryOutOfRange("(a,b)-form entries must be nonnegative")
    return tuple(v + 1 for v in c)


def u_to_ab_pf(c: Sequence[int]) -> tuple[int, ...]:
    if any(v < 1 for v in c):
        raise EntryOutOfRange("u-form entries must be positive")
    return tuple(v - 1 for v in c)


def is_ab_parking(c: Sequence[int], a: int, b: int) -> bool:
    """(a,b)-parking test for the 0-indexed form; pass ``(ka, kb)`` for length ``kb``."""
    if len(c) != b:
        raise LengthMismatch(f"an ({a},{b})-parking function has length {b}, got {len(c)}")
    if any(v < 0 for v in c):
        return False
    return is_u_parking(ab_to_u_pf(c), ab_threshold_vector(a, b, b))


# -- labeled lattice paths ------------------------------------------------------


@dataclass(frozen=True)
class LabeledPath:
    """N/E lattice path from (0,0) to (b,a); ``steps`` holds ``"N"`` or an E-step label."""

    a: int
    b: int
    steps: tuple[int | str, ...]

    def east_heights(self) -> list[tuple[int, int]]:
        """``(height, label)`` of every E-step, left to right."""
        h, out = 0, []
        for s in self.steps:
            if s == "N":
                h += 1
            else:
                out.append((h, s))
        return out

    def __str__(self) -> str:
        groups, cur = [], ""
        for s in self.steps:
            if s == "N":
                groups.append(cur + "N")
                cur = ""
            else:
                cur += f"E[{s}]"
        if cur:
            groups.append(cur)
        return " ".join(groups)


_TOKEN = re.compile(r"\s*(?:E\[(\d+)\]|(N))")


def parse_path(text: str) -> LabeledPath:
    steps: list[int | str] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad path syntax at {text[pos:]!r}")
        steps.append(int(m.group(1)) if m.group(1) is not None else "N")
        pos = m.end()
    a = steps.count("N")
    return LabeledPath(a, len(steps) - a, tuple(steps))


def dyck_path_of(c: Sequence[int], a: int, b: int) -> LabeledPath:
    """Labeled path whose E-step labeled ``i`` sits at height ``c[i]``.

    E-steps at equal height carry increasing labels left to right.
    """
    if len(c) != b or not is_ab_parking(c, a, b):
        raise NotAParkingFunction(f"{tuple(c)} is not an ({a},{b})-parking function")
    steps: list[int | str] = []
    for h in range(a):
        steps.extend(sorted(i for i, v in enumerate(c) if v == h))
        steps.append("N")
    return LabeledPath(a, b, tuple(steps))


def pf_of_path(path: LabeledPath) -> tuple[int, ...]:
    """Inverse of :func:`dyck_path_of`: read each label's height."""
    pairs = path.east_heights()
    labels = sorted(lbl for _, lbl in pairs)
    if labels != list(range(path.b)):
        raise NotAParkingFunction("E-step labels must be exactly 0..b-1")
    for (h1, l1), (h2, l2) in zip(pairs, pairs[1:]):
        if h1 == h2 and l1 > l2:
            raise NotAParkingFunction("labels must increase along consecutive E-steps")
    c = [0] * path.b
    for h, lbl in pairs:
        c[lbl] = h
    if not is_ab_parking(c, path.a, path.b):
        raise NotAParkingFunction("path leaves the region below the diagonal")
    return tuple(c)


# -- block decomposition --------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[PFSeq, ...]
    lengths: tuple[int, ...]
    positions: tuple[tuple[int, ...], ...]
    starts: tuple[Fraction, ...]
    """Lowest admissible value of each block (``t + (j_1+..+j_{t-1})(a-1)/b``)."""


def _check_periodic_params(a: int, b: int):
    if gcd(a, b) != 1:
        raise GcdViolation(f"gcd({a},{b}) != 1")
    if (a - 1) % b:
        raise ModViolation(
            f"block decomposition needs a = 1 mod b, got a={a}, b={b}"
        )


def decompose_blocks(c: Sequence[int], a: int, b: int, k: int) -> BlockDecomposition:
    """Split a (ka,kb)-parking function (u-form) into ``k`` greedy blocks.

    Block ``t`` starts at ``L_t = t + (j_1+..+j_{t-1}) r`` with
    ``r = (a-1)/b`` and takes the largest ``j_t`` such that, for every
    ``1 <= i <= j_t``, at least ``i`` entries lie in ``[L_t, L_t + (i-1) r]``.
    Positions are 1-based and kept in original order.
    """
    _check_periodic_params(a, b)
    c = tuple(c)
    n = k * b
    if len(c) != n:
        raise LengthMismatch(f"expected length {n}, got {len(c)}")
    if not is_u_parking(c, ab_threshold_vector(a, b, n)):
        raise NotAParkingFunction(f"{c} is not a ({k * a},{n})-parking function")
    r = Fraction(a - 1, b)
    values = sorted(c)
    lengths: list[int] = []
    starts: list[Fraction] = []
    used = 0
    for t in range(1, k + 1):
        lo = t + used * r
        lo_idx = bisect_left(values, ceil(lo))
        if lo_idx != used:
            raise NotAParkingFunction(f"{c}: entries below {lo} fall outside blocks 1..{t - 1}")
        j = 0
        while used + j < n:
            hi = lo + j * r
            if bisect_right(values, floor(hi)) - lo_idx >= j + 1:
                j += 1
            else:
                break
        lengths.append(j)
        starts.append(lo)
        used += j
    if used != n or not all(sum(lengths[:t]) >= t * b for t in range(1, k + 1)):
        raise NotAParkingFunction(f"{c} does not split into blocks (got lengths {lengths})")
    blocks, positions = [], []
    for lo, j in zip(starts, lengths):
        hi = lo + (j - 1) * r if j else lo - 1
        pos = tuple(i + 1 for i, v in enumerate(c) if lo <= v <= hi)
        if len(pos) != j:
            raise NotAParkingFunction(f"{c}: block starting at {lo} has {len(pos)} entries, expected {j}")
        positions.append(pos)
        blocks.append(tuple(c[i - 1] for i in pos))
    return BlockDecomposition(tuple(blocks), tuple(lengths), tuple(positions), tuple(starts))


def normalize_block(block: Sequence[int], t: int, offsets: Sequence[int], a: int, b: int) -> PFSeq:
    """Shift block ``t`` down by ``(t-1) + (j_1+..+j_{t-1})(a-1)/b``.

    ``offsets`` are the lengths ``j_1, .., j_{t-1}`` of the earlier blocks
    (extra trailing entries are ignored).
    """
    shift = (t - 1) + sum(offsets[: t - 1]) * Fraction(a - 1, b)
    out = []
    for v in block:
        s = v - shift
        if s.denominator != 1 or s < 1:
            raise NonIntegralShift(f"entry {v} shifted by {shift} is not a positive integer")
        out.append(int(s))
    return tuple(out)


def block_weight_vector(a: int, b: int, length: int) -> Thresholds:
    """``(1, (a-1)/b, ..., (a-1)/b)`` of the given length."""
    if length == 0:
        return ()
    return (Fraction(1),) + (Fraction(a - 1, b),) * (length - 1)


# -- text I/O ---------------------------------------------------------------------


def parse_int_seq(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc


def parse_rational_seq(text: str) -> Thresholds:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(Fraction(tok.strip()) for tok in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"expected comma-separated rationals, got {text!r}") from exc


def format_seq(seq: Sequence) -> str:
    return ",".join(str(v) for v in seq)
