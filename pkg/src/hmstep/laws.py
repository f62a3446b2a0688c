"""Verification harness for multiplication candidates.

Builds the staircase witnesses over the n-point base, checks monad laws and
naturality for any candidate on seeded random samples, decides uniqueness of
the projection fiber by exhaustive grid enumeration, walks the chain of
values any lawful multiplication is forced to take, and probes continuity by
driving the bump tower toward its limit while watching the images. Every
check is an exact rational comparison; reports record concrete witnesses
for each failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as iter_product

from .core import (
    FULL_WINDOW,
    ONE,
    ZERO,
    FiniteSpace,
    Rat,
    TestFn,
    Window,
    make_discrete_space,
    product_space,
)
from .hm import (
    Functional,
    SpaceMap,
    compose_testfn,
    d_hm,
    functional_eval,
    hm_map,
    product_projections,
    support,
    support_criterion_check,
    support_membership_check,
    unit,
)
from .stepfn import (
    StepFn,
    canonicalize,
    format_stepfn,
    random_stepfn,
)
from .tower import (
    CONSTANT_LEFT,
    DIAGONAL,
    REMAP_LAST,
    MuCandidate,
    StepFn2,
    d_hm2,
    diagonal_flatten,
    eta_h,
    h2_map,
    h_eta,
    iterated_functional_eval,
    random_stepfn2,
    random_stepfn3,
)

CANDIDATES: dict[str, MuCandidate] = {
    c.name: c for c in (DIAGONAL, CONSTANT_LEFT, REMAP_LAST)
}

DEFAULT_FIBER_BUDGET = 1_000_000


class FiberBudgetError(RuntimeError):
    """Raised when the fiber enumeration would exceed its assignment budget."""


@dataclass(frozen=True)
class LawFailure:
    input: str
    expected: str
    actual: str

    def to_dict(self) -> dict:
        return {"input": self.input, "expected": self.expected, "actual": self.actual}


@dataclass(frozen=True)
class LawReport:
    """Outcome of one check suite: sample count, failures with witnesses,
    and, for stepwise checks, which steps held."""

    candidate: str | None
    law: str
    samples: int
    failures: tuple[LawFailure, ...]
    steps: tuple[tuple[str, bool], ...] = ()

    @property
    def verdict(self) -> str:
        return "pass" if not self.failures else "fail"

    def to_dict(self) -> dict:
        out = {
            "candidate": self.candidate,
            "law": self.law,
            "samples": self.samples,
            "failures": [f.to_dict() for f in self.failures],
            "verdict": self.verdict,
        }
        if self.steps:
            out["steps"] = [{"step": name, "holds": ok} for name, ok in self.steps]
        return out


@dataclass(frozen=True)
class ProbeRow:
    n: int
    coordinate_distance: Rat
    metric_distance: Rat
    image_gap: Rat

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "coordinate_distance": str(self.coordinate_distance),
            "metric_distance": str(self.metric_distance),
            "image_gap": str(self.image_gap),
        }


@dataclass(frozen=True)
class FiberResult:
    n: int
    grid: int
    unique: bool
    witnesses: tuple[StepFn, ...]
    checked: int

    def to_report(self) -> LawReport:
        failures = tuple(
            LawFailure(
                input=f"n={self.n} grid={self.grid}",
                expected="diagonal staircase only",
                actual=format_stepfn(w),
            )
            for w in self.witnesses
        )
        if not self.unique and not failures:
            failures = (
                LawFailure(
                    input=f"n={self.n} grid={self.grid}",
                    expected="diagonal staircase among solutions",
                    actual="missing",
                ),
            )
        return LawReport(
            None,
            "fiber-uniqueness",
            self.checked,
            failures,
            steps=(("unique", self.unique),),
        )


@dataclass(frozen=True)
class Witnesses:
    """The staircase family over the n-point base and its two-point collapse.

    ``staircase`` takes value i on the i-th of n equal blocks. The paired
    versions live over the product of the base with itself:
    ``diagonal_staircase`` takes (i, i) on block i, ``row_staircases[i-1]``
    sweeps (i, 1..n), and ``nested_rows`` is the level-2 function whose i-th
    block carries the i-th row staircase. ``bumps[i-1]`` is the two-point
    indicator of block i and ``nested_bumps`` stacks them the same way.
    """

    n: int
    base: FiniteSpace
    pairs: FiniteSpace
    two_point: FiniteSpace
    staircase: StepFn
    diagonal_staircase: StepFn
    row_staircases: tuple[StepFn, ...]
    nested_rows: StepFn2
    bumps: tuple[StepFn, ...]
    nested_bumps: StepFn2
    left_proj: SpaceMap
    right_proj: SpaceMap
    equality_collapse: SpaceMap


def _block_grid(n: int) -> tuple[Rat, ...]:
    return tuple(Rat(i, n) for i in range(n + 1))


def staircase_fn(n: int) -> StepFn:
    """Value i on [(i-1)/n, i/n) over the n-point base."""
    return canonicalize(StepFn(_block_grid(n), tuple(range(1, n + 1))))


def bump_fn(i: int, n: int) -> StepFn:
    """Two-point indicator of the i-th block: 1 on [(i-1)/n, i/n), else 0."""
    bps = (ZERO, Rat(i - 1, n), Rat(i, n), ONE)
    return canonicalize(StepFn(bps, (0, 1, 0)))


def nested_bumps_fn(n: int) -> StepFn2:
    """Block i carries the i-th bump; the tower the probe drives to its limit."""
    return canonicalize(StepFn(_block_grid(n), tuple(bump_fn(i, n) for i in range(1, n + 1))))


def build_witnesses(n: int) -> Witnesses:
    """Construct the full witness record and assert its definitional
    identities (projections of the diagonal staircase, collapse of the
    nested rows)."""
    if n < 1:
        raise ValueError("witness index must be at least 1")
    base = make_discrete_space(n)
    pairs = product_space(base, base)
    two_point = make_discrete_space(2, labels=(0, 1))
    left_proj, right_proj = product_projections(pairs, base, base)
    equality_collapse = SpaceMap(
        pairs, two_point, tuple(1 if a == b else 0 for a, b in pairs.labels)
    )
    grid = _block_grid(n)
    staircase = staircase_fn(n)
    diagonal_staircase = canonicalize(
        StepFn(grid, tuple((i, i) for i in range(1, n + 1)))
    )
    row_staircases = tuple(
        canonicalize(StepFn(grid, tuple((i, j) for j in range(1, n + 1))))
        for i in range(1, n + 1)
    )
    nested_rows = canonicalize(StepFn(grid, row_staircases))
    bumps = tuple(bump_fn(i, n) for i in range(1, n + 1))
    nested_bumps = nested_bumps_fn(n)
    if (
        hm_map(left_proj, diagonal_staircase) != staircase
        or hm_map(right_proj, diagonal_staircase) != staircase
    ):
        raise RuntimeError("witness identity broken: projections of the diagonal staircase")
    if h2_map(equality_collapse, nested_rows) != nested_bumps:
        raise RuntimeError("witness identity broken: collapse of the nested rows")
    return Witnesses(
        n=n,
        base=base,
        pairs=pairs,
        two_point=two_point,
        staircase=staircase,
        diagonal_staircase=diagonal_staircase,
        row_staircases=row_staircases,
        nested_rows=nested_rows,
        bumps=bumps,
        nested_bumps=nested_bumps,
        left_proj=left_proj,
        right_proj=right_proj,
        equality_collapse=equality_collapse,
    )


# ---------------------------------------------------------------------------
# seeded sample plumbing


def _rng(seed: int | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _random_window(rng: random.Random, max_den: int = 12) -> Window:
    den = rng.randint(1, max_den)
    i = rng.randint(0, den - 1)
    j = rng.randint(i + 1, den)
    return Window(Rat(i, den), Rat(j, den))


def _random_rat(rng: random.Random, span: int = 3, max_den: int = 12) -> Rat:
    den = rng.randint(1, max_den)
    return Rat(rng.randint(-span * den, span * den), den)


def _random_testfn(rng: random.Random, space: FiniteSpace, lo: int = -3, hi: int = 3) -> TestFn:
    den = rng.randint(1, 12)
    vals = tuple(Rat(rng.randint(lo * den, hi * den), den) for _ in range(space.n))
    return TestFn(space, vals)


def _random_unit_testfn(rng: random.Random, space: FiniteSpace) -> TestFn:
    # values in [0, 1]
    den = rng.randint(1, 12)
    return TestFn(space, tuple(Rat(rng.randint(0, den), den) for _ in range(space.n)))


def _space_tag(space: FiniteSpace) -> str:
    return f"space({','.join(str(lab) for lab in space.labels)})"


def fixed_rational_space() -> FiniteSpace:
    """A four-point space with non-uniform rational distances in [1/2, 1],
    so every triangle closes; exercises the non-discrete metric paths."""
    d = {
        (1, 2): Rat(1, 2), (1, 3): Rat(3, 4), (1, 4): ONE,
        (2, 3): Rat(2, 3), (2, 4): Rat(5, 6), (3, 4): Rat(7, 12),
    }
    labels = (1, 2, 3, 4)
    rows = tuple(
        tuple(
            ZERO if a == b else d.get((a, b)) or d[(b, a)]
            for b in labels
        )
        for a in labels
    )
    return FiniteSpace(labels, rows)


def default_spaces(max_size: int = 4) -> list[FiniteSpace]:
    """Sampling pool: discrete spaces up to max_size points, one product,
    one non-uniform metric. All members have at most five points."""
    pool: list[FiniteSpace] = [make_discrete_space(k) for k in range(1, max_size + 1)]
    two = make_discrete_space(2)
    pool.append(product_space(two, two))
    pool.append(fixed_rational_space())
    return pool


# ---------------------------------------------------------------------------
# coordinate and support suites


def check_linearity(spaces: list[FiniteSpace], samples: int, seed: int, grid: int = 12) -> LawReport:
    """Window averages are linear in the test function."""
    rng = _rng(seed)
    failures = []
    for _ in range(samples):
        space = rng.choice(spaces)
        f = random_stepfn(space, rng.randint(1, grid), rng)
        phi1 = _random_testfn(rng, space)
        phi2 = _random_testfn(rng, space)
        lam1 = _random_rat(rng)
        lam2 = _random_rat(rng)
        w = _random_window(rng, grid)
        combo = phi1.scaled(lam1) + phi2.scaled(lam2)
        left = functional_eval(Functional(combo, w), f)
        right = lam1 * functional_eval(Functional(phi1, w), f) + lam2 * functional_eval(
            Functional(phi2, w), f
        )
        if left != right:
            failures.append(
                LawFailure(
                    input=f"{_space_tag(space)} f={format_stepfn(f)} window=({w.a},{w.b}) "
                    f"lams=({lam1},{lam2}) phi1={phi1.values} phi2={phi2.values}",
                    expected=str(right),
                    actual=str(left),
                )
            )
    return LawReport(None, "linearity", samples, tuple(failures))


def check_monotonicity(spaces: list[FiniteSpace], samples: int, seed: int, grid: int = 12) -> LawReport:
    """Window averages respect pointwise order of test functions."""
    rng = _rng(seed)
    failures = []
    for _ in range(samples):
        space = rng.choice(spaces)
        f = random_stepfn(space, rng.randint(1, grid), rng)
        phi1 = _random_testfn(rng, space)
        delta = _random_testfn(rng, space, lo=0, hi=3)
        phi2 = phi1 + delta
        w = _random_window(rng, grid)
        low = functional_eval(Functional(phi1, w), f)
        high = functional_eval(Functional(phi2, w), f)
        if low > high:
            failures.append(
                LawFailure(
                    input=f"{_space_tag(space)} f={format_stepfn(f)} window=({w.a},{w.b}) "
                    f"phi1={phi1.values} phi2={phi2.values}",
                    expected=f"<= {high}",
                    actual=str(low),
                )
            )
    return LawReport(None, "monotonicity", samples, tuple(failures))


def check_coordinate_naturality(samples: int, seed: int, grid: int = 12) -> LawReport:
    """Averaging phi after a point map equals averaging phi∘map before it."""
    rng = _rng(seed)
    failures = []
    for _ in range(samples):
        src = make_discrete_space(rng.randint(1, 5))
        dst = make_discrete_space(rng.randint(1, 5))
        h = SpaceMap(src, dst, tuple(rng.choice(dst.labels) for _ in src.labels))
        phi = _random_testfn(rng, dst)
        w = _random_window(rng, grid)
        f = random_stepfn(src, rng.randint(1, grid), rng)
        left = functional_eval(Functional(phi, w), hm_map(h, f))
        right = functional_eval(Functional(compose_testfn(phi, h), w), f)
        if left != right:
            failures.append(
                LawFailure(
                    input=f"map={h.assignment} f={format_stepfn(f)} window=({w.a},{w.b}) "
                    f"phi={phi.values}",
                    expected=str(right),
                    actual=str(left),
                )
            )
    return LawReport(None, "coordinate-naturality", samples, tuple(failures))


def check_unit_coordinate(spaces: list[FiniteSpace], samples: int, seed: int) -> LawReport:
    """Every window average of a constant function returns the test value."""
    rng = _rng(seed)
    failures = []
    for _ in range(samples):
        space = rng.choice(spaces)
        x = rng.choice(space.labels)
        phi = _random_testfn(rng, space)
        w = _random_window(rng)
        got = functional_eval(Functional(phi, w), unit(x, space))
        if got != phi(x):
            failures.append(
                LawFailure(
                    input=f"{_space_tag(space)} x={x} window=({w.a},{w.b}) phi={phi.values}",
                    expected=str(phi(x)),
                    actual=str(got),
                )
            )
    return LawReport(None, "unit-coordinate", samples, tuple(failures))


def check_support_criterion(spaces: list[FiniteSpace], samples: int, seed: int, grid: int = 12) -> LawReport:
    """The window-indicator criterion agrees with a direct piece scan."""
    rng = _rng(seed)
    failures = []
    for _ in range(samples):
        space = rng.choice(spaces)
        f = random_stepfn(space, rng.randint(1, grid), rng)
        size = rng.randint(1, space.n)
        b_set = frozenset(rng.sample(space.labels, size))
        got = support_criterion_check(space, f, b_set)
        expected = support(f) <= b_set
        if got != expected:
            failures.append(
                LawFailure(
                    input=f"{_space_tag(space)} f={format_stepfn(f)} B={sorted(map(str, b_set))}",
                    expected=str(expected),
                    actual=str(got),
                )
            )
    return LawReport(None, "support-criterion", samples, tuple(failures))


def check_support_membership(spaces: list[FiniteSpace], samples: int, seed: int, grid: int = 12) -> LawReport:
    """The witness-level membership test agrees with a direct piece scan."""
    rng = _rng(seed)
    failures = []
    for _ in range(samples):
        space = rng.choice(spaces)
        f = random_stepfn(space, rng.randint(1, grid), rng)
        x = rng.choice(space.labels)
        got = support_membership_check(space, f, x)
        expected = x in support(f)
        if got != expected:
            failures.append(
                LawFailure(
                    input=f"{_space_tag(space)} f={format_stepfn(f)} x={x}",
                    expected=str(expected),
                    actual=str(got),
                )
            )
    return LawReport(None, "support-membership", samples, tuple(failures))


def _split_variant(f: StepFn, rng: random.Random) -> StepFn:
    # same almost-everywhere class, non-canonical representation
    f = canonicalize(f)
    i = rng.randrange(f.pieces)
    t0, t1 = f.breakpoints[i], f.breakpoints[i + 1]
    mid = (t0 + t1) / 2
    bps = f.breakpoints[: i + 1] + (mid,) + f.breakpoints[i + 1 :]
    vals = f.values[: i + 1] + (f.values[i],) + f.values[i + 1 :]
    return StepFn(bps, vals)


def check_metric_axioms(spaces: list[FiniteSpace], samples: int, seed: int, grid: int = 12) -> LawReport:
    """Level-1 metric: identity, symmetry, nonnegativity, triangle, and
    zero-iff-same-class, each on a random triple per sample."""
    rng = _rng(seed)
    failures = []

    def fail(tag: str, detail: str, expected: str, actual: str) -> None:
        failures.append(LawFailure(input=f"{tag} {detail}", expected=expected, actual=actual))

    for k in range(samples):
        space = rng.choice(spaces)
        f = random_stepfn(space, rng.randint(1, grid), rng)
        if k % 4 == 0:
            g: StepFn = _split_variant(f, rng)
        else:
            g = random_stepfn(space, rng.randint(1, grid), rng)
        h = random_stepfn(space, rng.randint(1, grid), rng)
        tag = f"{_space_tag(space)} f={format_stepfn(f)} g={format_stepfn(g)} h={format_stepfn(h)}"
        dfg = d_hm(space, f, g)
        if d_hm(space, f, f) != ZERO:
            fail(tag, "d(f,f)", "0", str(d_hm(space, f, f)))
        if dfg != d_hm(space, g, f):
            fail(tag, "symmetry", str(dfg), str(d_hm(space, g, f)))
        if dfg < ZERO:
            fail(tag, "nonnegativity", ">= 0", str(dfg))
        if (dfg == ZERO) != (canonicalize(f) == canonicalize(g)):
            fail(tag, "zero-iff-same-class", str(canonicalize(f) == canonicalize(g)), str(dfg == ZERO))
        if d_hm(space, f, h) > dfg + d_hm(space, g, h):
            fail(tag, "triangle", f"<= {dfg + d_hm(space, g, h)}", str(d_hm(space, f, h)))
    return LawReport(None, "metric-axioms-level1", samples, tuple(failures))


def check_metric_axioms_level2(spaces: list[FiniteSpace], samples: int, seed: int) -> LawReport:
    """Level-2 metric: same axioms on random nested triples."""
    rng = _rng(seed)
    failures = []

    def fail(tag: str, detail: str, expected: str, actual: str) -> None:
        failures.append(LawFailure(input=f"{tag} {detail}", expected=expected, actual=actual))

    for k in range(samples):
        space = rng.choice(spaces)
        F = random_stepfn2(space, rng.randint(1, 4), 4, rng)
        if k % 4 == 0:
            G: StepFn = _split_variant(F, rng)
        else:
            G = random_stepfn2(space, rng.randint(1, 4), 4, rng)
        H = random_stepfn2(space, rng.randint(1, 4), 4, rng)
        tag = f"{_space_tag(space)} F={format_stepfn(F)} G={format_stepfn(G)} H={format_stepfn(H)}"
        dfg = d_hm2(space, F, G)
        if d_hm2(space, F, F) != ZERO:
            fail(tag, "d2(F,F)", "0", str(d_hm2(space, F, F)))
        if dfg != d_hm2(space, G, F):
            fail(tag, "symmetry", str(dfg), str(d_hm2(space, G, F)))
        if dfg < ZERO:
            fail(tag, "nonnegativity", ">= 0", str(dfg))
        if (dfg == ZERO) != (canonicalize(F) == canonicalize(G)):
            fail(tag, "zero-iff-same-class", str(canonicalize(F) == canonicalize(G)), str(dfg == ZERO))
        if d_hm2(space, F, H) > dfg + d_hm2(space, G, H):
            fail(tag, "triangle", f"<= {dfg + d_hm2(space, G, H)}", str(d_hm2(space, F, H)))
    return LawReport(None, "metric-axioms-level2", samples, tuple(failures))


# ---------------------------------------------------------------------------
# monad-law suites


def check_unit_laws(
    mu: MuCandidate, spaces: list[FiniteSpace], samples: int, seed: int, grid: int = 8
) -> LawReport:
    """Flattening either nesting of the unit must return the function."""
    rng = _rng(seed)
    failures = []
    for _ in range(samples):
        space = rng.choice(spaces)
        f = random_stepfn(space, rng.randint(1, grid), rng)
        inner = mu(h_eta(f))
        if inner != f:
            failures.append(
                LawFailure(
                    input=f"{_space_tag(space)} unit-inside f={format_stepfn(f)}",
                    expected=format_stepfn(f),
                    actual=format_stepfn(inner),
                )
            )
        outer = mu(eta_h(f))
        if outer != f:
            failures.append(
                LawFailure(
                    input=f"{_space_tag(space)} unit-outside f={format_stepfn(f)}",
                    expected=format_stepfn(f),
                    actual=format_stepfn(outer),
                )
            )
    return LawReport(mu.name, "unit-laws", samples, tuple(failures))


def check_associativity(
    mu: MuCandidate, spaces: list[FiniteSpace], samples: int, seed: int, grid: int = 4
) -> LawReport:
    """Flattening the outer two levels first or the inner two levels first
    must agree on random level-3 functions."""
    rng = _rng(seed)
    failures = []
    for _ in range(samples):
        space = rng.choice(spaces)
        F3 = random_stepfn3(space, rng.randint(1, grid), grid, grid, rng)
        outer_first = mu(mu(F3))
        inner_first = mu(mu.lift(F3))
        if outer_first != inner_first:
            failures.append(
                LawFailure(
                    input=f"{_space_tag(space)} F3={format_stepfn(F3)}",
                    expected=format_stepfn(outer_first),
                    actual=format_stepfn(inner_first),
                )
            )
    return LawReport(mu.name, "associativity", samples, tuple(failures))


def check_naturality(mu: MuCandidate, map_samples: int, seed: int, grid: int = 4) -> LawReport:
    """Flattening must commute with the functor action of any point map."""
    rng = _rng(seed)
    failures = []
    for _ in range(map_samples):
        src = make_discrete_space(rng.randint(1, 4))
        dst = make_discrete_space(rng.randint(1, 4))
        h = SpaceMap(src, dst, tuple(rng.choice(dst.labels) for _ in src.labels))
        F = random_stepfn2(src, grid, grid, rng)
        left = mu(h2_map(h, F))
        right = hm_map(h, mu(F))
        if left != right:
            failures.append(
                LawFailure(
                    input=f"map={h.assignment} F={format_stepfn(F)}",
                    expected=format_stepfn(right),
                    actual=format_stepfn(left),
                )
            )
    return LawReport(mu.name, "naturality", map_samples, tuple(failures))


# ---------------------------------------------------------------------------
# fiber oracle, forced chain, discontinuity probe


def fiber_uniqueness(n: int, grid: int, budget: int = DEFAULT_FIBER_BUDGET) -> FiberResult:
    """Decide by exhaustive enumeration whether the diagonal staircase is the
    only step function over the paired base whose both projections equal the
    staircase.

    Enumerates every assignment of paired values to the n*grid uniform cells
    (breakpoints in multiples of 1/(n*grid)), filters by the projection
    constraints cellwise, and re-confirms each survivor through the functor
    action. Raises :class:`FiberBudgetError` instead of truncating when the
    assignment count exceeds the budget.
    """
    if n < 1 or grid < 1:
        raise ValueError("n and grid must be at least 1")
    cells = n * grid
    n2 = n * n
    total = n2**cells
    if total > budget:
        raise FiberBudgetError(
            f"fiber enumeration needs {total} assignments, over the budget of {budget}"
        )
    w = build_witnesses(n)
    labels = w.pairs.labels
    # staircase level on each grid cell
    target = [k // grid + 1 for k in range(cells)]
    allowed = [
        [lab[0] == t and lab[1] == t for lab in labels] for t in target
    ]
    survivors: list[tuple[int, ...]] = []
    for assign in iter_product(range(n2), repeat=cells):
        for k in range(cells):
            if not allowed[k][assign[k]]:
                break
        else:
            survivors.append(assign)
    bps = tuple(Rat(k, cells) for k in range(cells + 1))
    canonical = {
        canonicalize(StepFn(bps, tuple(labels[c] for c in assign)))
        for assign in survivors
    }
    for g in canonical:
        if hm_map(w.left_proj, g) != w.staircase or hm_map(w.right_proj, g) != w.staircase:
            raise RuntimeError("fiber filter and functor action disagree; enumeration is buggy")
    witnesses = tuple(
        sorted((g for g in canonical if g != w.diagonal_staircase), key=format_stepfn)
    )
    unique = not witnesses and w.diagonal_staircase in canonical
    return FiberResult(n=n, grid=grid, unique=unique, witnesses=witnesses, checked=total)


def forced_value_chain(n: int, mu: MuCandidate, seed: int = 0) -> LawReport:
    """Walk the chain of values the laws force on any multiplication.

    Steps, over the n-point base: flattening both nestings of the staircase
    returns the staircase (unit laws); both projections of the flattened
    nested rows equal the staircase (naturality); the flattened nested rows
    equal the diagonal staircase (the unique fiber point); and the flattened
    nested bumps equal the constant function at 1 (naturality along the
    equality collapse). A sampled unit-law check on the base runs first.
    """
    w = build_witnesses(n)
    precheck = check_unit_laws(mu, [w.base], 25, seed)
    failures: list[LawFailure] = list(precheck.failures[:3])
    steps: list[tuple[str, bool]] = [("unit-laws-on-base", precheck.verdict == "pass")]

    def record(name: str, ok: bool, expected: str, actual: str) -> None:
        steps.append((name, ok))
        if not ok:
            failures.append(LawFailure(input=f"n={n} {name}", expected=expected, actual=actual))

    inner_nested = h_eta(w.staircase)
    outer_nested = eta_h(w.staircase)
    got_inner = mu(inner_nested)
    got_outer = mu(outer_nested)
    record(
        "both-nestings-flatten-to-staircase",
        got_inner == w.staircase and got_outer == w.staircase,
        format_stepfn(w.staircase),
        f"{format_stepfn(got_inner)} / {format_stepfn(got_outer)}",
    )

    flat_rows = mu(w.nested_rows)
    left = hm_map(w.left_proj, flat_rows)
    right = hm_map(w.right_proj, flat_rows)
    record(
        "projections-of-flattened-rows-equal-staircase",
        left == w.staircase and right == w.staircase,
        format_stepfn(w.staircase),
        f"{format_stepfn(left)} / {format_stepfn(right)}",
    )

    record(
        "flattened-rows-equal-diagonal-staircase",
        flat_rows == w.diagonal_staircase,
        format_stepfn(w.diagonal_staircase),
        format_stepfn(flat_rows),
    )

    flat_bumps = mu(w.nested_bumps)
    forced = unit(1, w.two_point)
    record(
        "flattened-bumps-equal-constant-one",
        flat_bumps == forced,
        format_stepfn(forced),
        format_stepfn(flat_bumps),
    )
    return LawReport(mu.name, "forced-value-chain", len(steps), tuple(failures), tuple(steps))


def discontinuity_probe(mu: MuCandidate, n_max: int) -> list[ProbeRow]:
    """Drive the nested bump tower toward its limit and watch the images.

    For each n the row records the iterated-coordinate gap and the level-2
    metric distance between the tower member and the limit (both shrink like
    1/n), and the level-1 distance between their images under the candidate.
    A candidate matching the forced values keeps the image gap at 1, which
    is the continuity obstruction."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    two_point = make_discrete_space(2, labels=(0, 1))
    ident = TestFn(two_point, (ZERO, ONE))
    limit = eta_h(unit(0, two_point))
    mu_limit = mu(limit)
    rows = []
    for n in range(1, n_max + 1):
        tower = nested_bumps_fn(n)
        coord_tower = iterated_functional_eval(ident, FULL_WINDOW, FULL_WINDOW, tower)
        coord_limit = iterated_functional_eval(ident, FULL_WINDOW, FULL_WINDOW, limit)
        rows.append(
            ProbeRow(
                n=n,
                coordinate_distance=abs(coord_tower - coord_limit),
                metric_distance=d_hm2(two_point, tower, limit),
                image_gap=d_hm(two_point, mu(tower), mu_limit),
            )
        )
    return rows
