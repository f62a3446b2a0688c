"""Second and third levels of the step-function construction.

A level-2 function is a step function whose values are step functions over
one base space; level 3 nests once more. Because ``StepFn`` treats values as
opaque, the same type serves every level, and the operations here are the
level-aware ones: the two nestings of the unit, the level-2 functor action,
the level-2 integral metric, iterated window-average coordinates, and
flatten candidates (multiplication proposals) with their level-3 lifts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .core import FiniteSpace, Rat, TestFn, Window, ZERO
from .hm import Functional, SpaceMap, _check_values, d_hm, functional_eval, hm_map
from .stepfn import (
    StepFn,
    canonicalize,
    common_refinement,
    constant,
    evaluate,
    from_segments,
    overlap_length,
    random_stepfn,
)

StepFn2 = StepFn
StepFn3 = StepFn


def _check_nested(F: StepFn) -> None:
    for v in F.values:
        if not isinstance(v, StepFn):
            raise ValueError("expected a nested step function (values must be step functions)")


def h_eta(f: StepFn) -> StepFn2:
    """Apply the unit inside: replace each value by its constant function.

    This is the image of f under the functor action of the unit map.
    """
    f = canonicalize(f)
    return canonicalize(StepFn(f.breakpoints, tuple(constant(v) for v in f.values)))


def eta_h(f: StepFn) -> StepFn2:
    """Apply the unit outside: the constant level-2 function at f."""
    return constant(canonicalize(f))


def h2_map(h: SpaceMap, F: StepFn2) -> StepFn2:
    """Level-2 functor action: post-compose every inner function with h."""
    _check_nested(F)
    return canonicalize(StepFn(F.breakpoints, tuple(hm_map(h, v) for v in F.values)))


def diagonal_flatten(F: StepFn2) -> StepFn:
    """The diagonal multiplication candidate: s maps to F(s)(s).

    On each outer piece the inner function's breakpoints are clipped to the
    piece, so the result is again an exact step function. Satisfies both
    unit laws, associativity, and naturality at the step-function level.
    """
    F = canonicalize(F)
    _check_nested(F)
    segments = []
    for u, v, g in F.segments():
        for p, q, val in g.segments():
            lo = p if p >= u else u
            hi = q if q <= v else v
            if hi > lo:
                segments.append((lo, hi, val))
    return from_segments(segments)


def d_hm2(space: FiniteSpace, F: StepFn2, G: StepFn2) -> Rat:
    """Integral over the outer variable of d_hm between inner functions."""
    _check_nested(F)
    _check_nested(G)
    total = ZERO
    for start, end, left, right in common_refinement(F, G):
        if left != right:
            total += (end - start) * d_hm(space, left, right)
    return total


def iterated_functional_eval(
    phi: TestFn, inner: Window, outer: Window, F: StepFn2
) -> Rat:
    """Mean over the outer window of the inner window-average coordinate.

    This is the level-2 coordinate obtained by averaging the level-1
    coordinate (phi over ``inner``) of F(s) for s in ``outer``.
    """
    _check_nested(F)
    level1 = Functional(phi, inner)
    total = ZERO
    for t0, t1, g in F.segments():
        seg = overlap_length(t0, t1, outer)
        if seg > ZERO:
            total += seg * functional_eval(level1, g)
    return total / outer.length


@dataclass(frozen=True)
class MuCandidate:
    """A multiplication proposal: a transformation taking a nested step
    function to a plain one, applied uniformly at every level (values are
    opaque). ``lift`` maps the candidate over the outer values of a level-3
    function, which is the other composite the associativity law compares."""

    name: str
    transform: Callable[[StepFn2], StepFn]

    def __call__(self, F: StepFn2) -> StepFn:
        return canonicalize(self.transform(canonicalize(F)))

    def lift(self, F3: StepFn3) -> StepFn2:
        F3 = canonicalize(F3)
        _check_nested(F3)
        return canonicalize(StepFn(F3.breakpoints, tuple(self(v) for v in F3.values)))


def _constant_left(F: StepFn2) -> StepFn:
    # deliberately broken: forgets everything but the leftmost inner function
    _check_nested(F)
    g = evaluate(F, ZERO)
    assert isinstance(g, StepFn)
    return g


def _remap_last(F: StepFn2) -> StepFn:
    # deliberately broken: flattens, then overwrites the last piece's value
    # with the first piece's value; not natural under collapsing maps
    flat = diagonal_flatten(F)
    if flat.pieces == 1:
        return flat
    return StepFn(flat.breakpoints, flat.values[:-1] + (flat.values[0],))


DIAGONAL = MuCandidate("diagonal", diagonal_flatten)
CONSTANT_LEFT = MuCandidate("constant-left", _constant_left)
REMAP_LAST = MuCandidate("remap-last", _remap_last)


def random_stepfn2(
    space: FiniteSpace,
    outer_grid: int,
    inner_grid: int,
    seed: int | random.Random,
) -> StepFn2:
    """A canonical level-2 function: outer breakpoints on the 1/outer_grid
    grid, each inner function drawn by :func:`random_stepfn`."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if outer_grid < 1:
        raise ValueError("outer grid must be at least 1")
    bps = tuple(Rat(k, outer_grid) for k in range(outer_grid + 1))
    vals = tuple(
        random_stepfn(space, rng.randint(1, inner_grid), rng) for _ in range(outer_grid)
    )
    return canonicalize(StepFn(bps, vals))


def random_stepfn3(
    space: FiniteSpace,
    outer_grid: int,
    mid_grid: int,
    inner_grid: int,
    seed: int | random.Random,
) -> StepFn3:
    """A canonical level-3 function built from random level-2 values."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if outer_grid < 1:
        raise ValueError("outer grid must be at least 1")
    bps = tuple(Rat(k, outer_grid) for k in range(outer_grid + 1))
    vals = tuple(
        random_stepfn2(space, rng.randint(1, mid_grid), inner_grid, rng)
        for _ in range(outer_grid)
    )
    return canonicalize(StepFn(bps, vals))
