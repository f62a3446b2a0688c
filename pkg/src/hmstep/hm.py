"""The step-function space over a finite base metric.

Provides the integral metric d_hm, window-average coordinates (a test
function averaged over a window), max-combined pseudometrics, the functor
action of a point map, the constant-function unit, and exact support
predicates. Everything is computed over common refinements, so results are
exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import (
    FULL_WINDOW,
    ONE,
    ZERO,
    FiniteSpace,
    Rat,
    TestFn,
    Window,
)
from .stepfn import (
    StepFn,
    canonicalize,
    common_refinement,
    constant,
    measure_preimage,
    overlap_length,
)


def _check_values(space: FiniteSpace, f: StepFn, role: str = "step function") -> None:
    for v in set(f.values):
        if v not in space:
            raise ValueError(f"{role} value {v!r} is not a point of the given space")


@dataclass(frozen=True)
class Functional:
    """A window-average coordinate: a test function plus the window it is
    averaged over. Applied to a step function f it yields the mean of
    phi(f(t)) for t in the window."""

    phi: TestFn
    window: Window


@dataclass(frozen=True)
class Pseudometric:
    """Finitely many coordinates combined with max of absolute gaps."""

    functionals: tuple[Functional, ...]

    def __post_init__(self) -> None:
        fs = tuple(self.functionals)
        object.__setattr__(self, "functionals", fs)
        if not fs:
            raise ValueError("a pseudometric needs at least one coordinate")
        space = fs[0].phi.space
        if any(fnl.phi.space != space for fnl in fs):
            raise ValueError("all coordinates must share one base space")


@dataclass(frozen=True)
class SpaceMap:
    """A (total) map between finite spaces, one target point per source point."""

    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple

    def __post_init__(self) -> None:
        assignment = tuple(self.assignment)
        object.__setattr__(self, "assignment", assignment)
        if len(assignment) != self.source.n:
            raise ValueError("need exactly one image per source point")
        for y in assignment:
            if y not in self.target:
                raise ValueError(f"image {y!r} is not a point of the target space")

    def __call__(self, x: object) -> object:
        return self.assignment[self.source.index_of(x)]

    def after(self, other: SpaceMap) -> SpaceMap:
        """Composite self ∘ other; other's target must be self's source."""
        if other.target != self.source:
            raise ValueError("composition mismatch: inner target differs from outer source")
        return SpaceMap(
            other.source, self.target, tuple(self(y) for y in other.assignment)
        )

    @classmethod
    def identity(cls, space: FiniteSpace) -> SpaceMap:
        return cls(space, space, space.labels)


def product_projections(
    prod: FiniteSpace, x: FiniteSpace, y: FiniteSpace
) -> tuple[SpaceMap, SpaceMap]:
    """The two coordinate projections of a product space built by
    ``core.product_space``."""
    firsts = tuple(lab[0] for lab in prod.labels)
    seconds = tuple(lab[1] for lab in prod.labels)
    return SpaceMap(prod, x, firsts), SpaceMap(prod, y, seconds)


def compose_testfn(phi: TestFn, h: SpaceMap) -> TestFn:
    """phi ∘ h, a test function on h's source."""
    if phi.space != h.target:
        raise ValueError("test function must live on the map's target space")
    return TestFn(h.source, tuple(phi(y) for y in h.assignment))


def d_hm(space: FiniteSpace, f: StepFn, g: StepFn) -> Rat:
    """Integral of the pointwise distance between f and g over [0, 1).

    Zero exactly when the canonical forms coincide; bounded by 1.
    """
    _check_values(space, f)
    _check_values(space, g)
    total = ZERO
    for start, end, left, right in common_refinement(f, g):
        if left != right:
            total += (end - start) * space.distance(left, right)
    return total


def functional_eval(fnl: Functional, f: StepFn) -> Rat:
    """Exact mean of phi(f(t)) over the functional's window."""
    phi, w = fnl.phi, fnl.window
    _check_values(phi.space, f)
    total = ZERO
    for t0, t1, v in f.segments():
        seg = overlap_length(t0, t1, w)
        if seg > ZERO:
            total += seg * phi(v)
    return total / w.length


def pseudometric_eval(rho: Pseudometric, f: StepFn, g: StepFn) -> Rat:
    """Max over coordinates of |coordinate(f) - coordinate(g)|."""
    return max(
        abs(functional_eval(fnl, f) - functional_eval(fnl, g))
        for fnl in rho.functionals
    )


def hm_map(h: SpaceMap, f: StepFn) -> StepFn:
    """Post-compose f with the point map h; the canonical result never has
    more pieces than f."""
    _check_values(h.source, f)
    return canonicalize(StepFn(f.breakpoints, tuple(h(v) for v in f.values)))


def unit(x: object, space: FiniteSpace) -> StepFn:
    """The constant step function at a point: the unit of the construction."""
    if x not in space:
        raise ValueError(f"{x!r} is not a point of the given space")
    return constant(x)


def support(f: StepFn) -> frozenset:
    """The set of values f attains on positive measure."""
    return frozenset(canonicalize(f).values)


def hm_n_membership(f: StepFn) -> int:
    """Least n such that f is an at-most-n-piece step function."""
    return canonicalize(f).pieces


def _spanned_windows(f: StepFn) -> list[Window]:
    # every window spanned by f's breakpoints; (0, 1) is among them
    return [Window(a, b) for a, b in combinations(f.breakpoints, 2)]


def support_criterion_check(space: FiniteSpace, f: StepFn, b_set) -> bool:
    """Coordinate test for support containment: true iff every indicator of a
    point outside ``b_set`` averages to zero over every window spanned by
    f's breakpoints (including the full window).

    Agrees exactly with ``support(f) <= b_set``.
    """
    targets = frozenset(b_set)
    if not targets:
        raise ValueError("the candidate support set must be nonempty")
    for y in targets:
        if y not in space:
            raise ValueError(f"{y!r} is not a point of the given space")
    _check_values(space, f)
    f = canonicalize(f)
    outside = [y for y in space.labels if y not in targets]
    windows = _spanned_windows(f)
    for y in outside:
        ind = TestFn.indicator(space, y)
        for w in windows:
            if functional_eval(Functional(ind, w), f) != ZERO:
                return False
    return True


def support_membership_check(space: FiniteSpace, f: StepFn, x: object) -> bool:
    """Coordinate test for membership of a point in the support: the witness
    level is the total length of pieces at x, and the decisive [0,1]-valued
    test function fixing x is its indicator (any other dominates it
    pointwise). Agrees exactly with ``x in support(f)``."""
    if x not in space:
        raise ValueError(f"{x!r} is not a point of the given space")
    _check_values(space, f)
    f = canonicalize(f)
    witness = measure_preimage(f, {x}, FULL_WINDOW)
    if witness == ZERO:
        return False
    ind = Functional(TestFn.indicator(space, x), FULL_WINDOW)
    return functional_eval(ind, f) >= witness
