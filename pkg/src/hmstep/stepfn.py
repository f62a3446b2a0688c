"""Piecewise-constant maps on [0, 1) with exact rational breakpoints.

A ``StepFn`` is a partition 0 = t_0 <= ... <= t_k = 1 plus one value per
piece; the value holds on the half-open piece [t_{i-1}, t_i). Values are
opaque hashable objects: points of a finite space, or step functions
themselves, so one generic type realizes every nesting level. Two functions
that agree almost everywhere share a canonical form (no zero-length pieces,
adjacent values distinct), and canonical forms are what every equality in
this toolkit compares.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .core import FULL_WINDOW, ONE, ZERO, FiniteSpace, Rat, Window, as_rat


@dataclass(frozen=True)
class StepFn:
    """Breakpoints and per-piece values; not necessarily canonical.

    The constructor validates the partition shape (sorted breakpoints from 0
    to 1, one value per piece) but deliberately admits zero-length and
    mergeable pieces so that :func:`canonicalize` has something to do.
    """

    breakpoints: tuple[Rat, ...]
    values: tuple

    def __post_init__(self) -> None:
        bps = tuple(as_rat(t) for t in self.breakpoints)
        vals = tuple(self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if len(bps) < 2:
            raise ValueError("a step function needs breakpoints 0 and 1")
        if len(vals) != len(bps) - 1:
            raise ValueError("need exactly one value per piece")
        if bps[0] != ZERO or bps[-1] != ONE:
            raise ValueError("breakpoints must start at 0 and end at 1")
        for t0, t1 in zip(bps, bps[1:]):
            if t1 < t0:
                raise ValueError("breakpoints must be sorted")

    @property
    def pieces(self) -> int:
        return len(self.values)

    def segments(self) -> Iterable[tuple[Rat, Rat, object]]:
        """Yield (start, end, value) per stored piece, zero-length included."""
        return zip(self.breakpoints, self.breakpoints[1:], self.values)

    @property
    def is_canonical(self) -> bool:
        if any(t1 <= t0 for t0, t1 in zip(self.breakpoints, self.breakpoints[1:])):
            return False
        return all(a != b for a, b in zip(self.values, self.values[1:]))


def canonicalize(f: StepFn) -> StepFn:
    """The unique representative of f's almost-everywhere class.

    Zero-length pieces are dropped and equal-valued neighbours merged.
    Idempotent; the result has at least one piece.
    """
    bps: list[Rat] = [ZERO]
    vals: list = []
    for t0, t1, v in f.segments():
        if t1 == t0:
            continue
        if vals and vals[-1] == v:
            bps[-1] = t1
        else:
            vals.append(v)
            bps.append(t1)
    return StepFn(tuple(bps), tuple(vals))


def constant(value: object) -> StepFn:
    """The one-piece step function with the given value on all of [0, 1)."""
    return StepFn((ZERO, ONE), (value,))


def from_segments(segments: Iterable[tuple[Rat, Rat, object]]) -> StepFn:
    """Assemble a canonical step function from contiguous (start, end, value)
    triples covering [0, 1) in order. Zero-length segments are tolerated."""
    bps: list[Rat] = [ZERO]
    vals: list = []
    for start, end, v in segments:
        if as_rat(start) != bps[-1]:
            raise ValueError("segments must be contiguous from 0 to 1")
        bps.append(as_rat(end))
        vals.append(v)
    if not vals or bps[-1] != ONE:
        raise ValueError("segments must cover [0, 1)")
    return canonicalize(StepFn(tuple(bps), tuple(vals)))


def evaluate(f: StepFn, t: int | str | Rat) -> object:
    """Value of f at t in [0, 1); at a breakpoint the right piece wins."""
    t = as_rat(t)
    if not (ZERO <= t < ONE):
        raise ValueError(f"step functions are defined on [0, 1), got {t}")
    i = bisect_right(f.breakpoints, t) - 1
    return f.values[i]


class RefinementCell(NamedTuple):
    start: Rat
    end: Rat
    left: object
    right: object


def common_refinement(f: StepFn, g: StepFn) -> list[RefinementCell]:
    """Partition [0, 1) so both functions are constant on every cell.

    Cells carry (start, end, value of f, value of g); zero-length cells never
    appear, and the cell count is at most pieces(f) + pieces(g) - 1.
    """
    f = canonicalize(f)
    g = canonicalize(g)
    cells: list[RefinementCell] = []
    i = j = 0
    cur = ZERO
    while i < f.pieces and j < g.pieces:
        fe = f.breakpoints[i + 1]
        ge = g.breakpoints[j + 1]
        end = fe if fe <= ge else ge
        cells.append(RefinementCell(cur, end, f.values[i], g.values[j]))
        if fe == end:
            i += 1
        if ge == end:
            j += 1
        cur = end
    return cells


def overlap_length(start: Rat, end: Rat, window: Window) -> Rat:
    """Length of [start, end) ∩ (window.a, window.b); 0 when disjoint."""
    lo = start if start >= window.a else window.a
    hi = end if end <= window.b else window.b
    return hi - lo if hi > lo else ZERO


def measure_preimage(f: StepFn, value_set: Iterable, window: Window = FULL_WINDOW) -> Rat:
    """Exact total length of {t in window : f(t) in value_set}."""
    targets = frozenset(value_set)
    total = ZERO
    for t0, t1, v in f.segments():
        if v in targets:
            total += overlap_length(t0, t1, window)
    return total


def random_stepfn(
    domain: FiniteSpace | Sequence,
    grid_denominator: int,
    seed: int | random.Random,
) -> StepFn:
    """A canonical step function with breakpoints on the 1/grid grid and
    values drawn uniformly from the domain. Deterministic for a fixed seed;
    pass a ``random.Random`` to draw many functions from one stream."""
    if grid_denominator < 1:
        raise ValueError("grid denominator must be at least 1")
    pool = domain.labels if isinstance(domain, FiniteSpace) else tuple(domain)
    if not pool:
        raise ValueError("domain must be nonempty")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    g = grid_denominator
    bps = tuple(Rat(k, g) for k in range(g + 1))
    vals = tuple(rng.choice(pool) for _ in range(g))
    return canonicalize(StepFn(bps, vals))


# Text serialization: breakpoints and values alternate, "t_0 v_1 t_1 ... t_k".
# Nested step functions are bracketed, pair labels parenthesized:
#   "0 1 1/2 2 1"                       over an int-labeled space
#   "0 [0 1 1/2 2 1] 1/2 [0 2 1] 1"     one nesting level down


def format_value(v: object) -> str:
    if isinstance(v, StepFn):
        return f"[{format_stepfn(v)}]"
    if isinstance(v, tuple):
        return "(" + ",".join(format_value(x) for x in v) + ")"
    return str(v)


def format_stepfn(f: StepFn) -> str:
    parts = [str(f.breakpoints[0])]
    for t0, t1, v in f.segments():
        parts.append(format_value(v))
        parts.append(str(t1))
    return " ".join(parts)


def _split_top(text: str, sep: str) -> list[str]:
    parts: list[str] = []
    depth = 0
    cur: list[str] = []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            if cur:
                parts.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return parts


def parse_value(token: str) -> object:
    token = token.strip()
    if token.startswith("["):
        if not token.endswith("]"):
            raise ValueError(f"unbalanced brackets in {token!r}")
        return parse_stepfn(token[1:-1])
    if token.startswith("("):
        if not token.endswith(")"):
            raise ValueError(f"unbalanced parentheses in {token!r}")
        return tuple(parse_value(p) for p in _split_top(token[1:-1], ","))
    try:
        return int(token)
    except ValueError:
        return as_rat(token)


def parse_stepfn(text: str) -> StepFn:
    """Inverse of :func:`format_stepfn` for int, pair, and nested values."""
    tokens = _split_top(text.strip(), " ")
    if len(tokens) < 3 or len(tokens) % 2 == 0:
        raise ValueError(f"malformed step function text: {text!r}")
    bps = tuple(as_rat(tok) for tok in tokens[0::2])
    vals = tuple(parse_value(tok) for tok in tokens[1::2])
    return StepFn(bps, vals)
