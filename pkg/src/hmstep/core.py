"""Exact rational scalars and finite metric spaces bounded by one.

Every quantity in this toolkit is an exact rational: breakpoints of step
functions, metric values, window averages. ``Rat`` is the standard-library
``fractions.Fraction``, which maintains the reduced form (gcd one, positive
denominator) after every operation, so arithmetic is exact by construction.
Floats are rejected at the boundaries; rounding never enters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction

ZERO = Rat(0)
ONE = Rat(1)


def as_rat(value: int | str | Rat) -> Rat:
    """Coerce an int, a ``"p/q"`` string, or a Fraction to an exact rational.

    Floats are rejected on purpose: a float argument is a bug in the caller.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class FiniteSpace:
    """A finite point set with an exact metric bounded by 1.

    ``labels`` are hashable point names (ints for discrete spaces, pairs for
    products); ``dist`` is the full distance table aligned with ``labels``.
    Construction checks the pairwise axioms (zero diagonal, symmetry,
    positivity off the diagonal, bound 1). The triangle inequality is
    checked exhaustively by :func:`validate_metric`; the discrete and
    product constructors below satisfy it structurally.
    """

    labels: tuple
    dist: tuple[tuple[Rat, ...], ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        dist = tuple(tuple(as_rat(x) for x in row) for row in self.dist)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", dist)
        n = len(labels)
        if n == 0:
            raise ValueError("a finite space needs at least one point")
        if len(set(labels)) != n:
            raise ValueError("labels must be distinct")
        if len(dist) != n or any(len(row) != n for row in dist):
            raise ValueError("distance table must be square, one row per point")
        for i in range(n):
            if dist[i][i] != ZERO:
                raise ValueError("distance from a point to itself must be 0")
            for j in range(i + 1, n):
                d = dist[i][j]
                if d != dist[j][i]:
                    raise ValueError("distance table must be symmetric")
                if d <= ZERO:
                    raise ValueError("distinct points must be at positive distance")
                if d > ONE:
                    raise ValueError("distances must be bounded by 1")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    def __contains__(self, x: object) -> bool:
        return x in self._index  # type: ignore[attr-defined]

    def index_of(self, x: object) -> int:
        try:
            return self._index[x]  # type: ignore[attr-defined]
        except (KeyError, TypeError):
            raise ValueError(f"{x!r} is not a point of this space") from None

    def distance(self, x: object, y: object) -> Rat:
        return self.dist[self.index_of(x)][self.index_of(y)]


def validate_metric(space: FiniteSpace) -> None:
    """Exhaustively check the triangle inequality over all point triples.

    The pairwise axioms are already enforced at construction; this adds the
    O(n^3) scan. Raises ValueError at the first violation.
    """
    d = space.dist
    n = space.n
    for i in range(n):
        row = d[i]
        for j in range(n):
            dij = row[j]
            for k in range(n):
                if dij > row[k] + d[k][j]:
                    raise ValueError(
                        "triangle inequality fails at "
                        f"{space.labels[i]!r}, {space.labels[j]!r} via {space.labels[k]!r}"
                    )


def make_discrete_space(n: int, labels: tuple | None = None) -> FiniteSpace:
    """The n-point space in which all distinct points are at distance 1.

    Labels default to 1..n; pass ``labels`` to override (e.g. ``(0, 1)`` for
    the two-point space used by the discontinuity probe).
    """
    if n < 1:
        raise ValueError("a discrete space needs at least one point")
    if labels is None:
        labels = tuple(range(1, n + 1))
    labels = tuple(labels)
    if len(labels) != n:
        raise ValueError("label count must match n")
    dist = tuple(
        tuple(ZERO if i == j else ONE for j in range(n)) for i in range(n)
    )
    return FiniteSpace(labels, dist)


def product_space(x: FiniteSpace, y: FiniteSpace) -> FiniteSpace:
    """Product point set with the max metric, still bounded by 1.

    Labels are pairs ``(a, b)`` in row-major order; the projections are
    recoverable from the pair structure (see ``hm.product_projections``).
    """
    labels = tuple((a, b) for a in x.labels for b in y.labels)
    rows = []
    for i in range(x.n):
        dx_row = x.dist[i]
        for j in range(y.n):
            dy_row = y.dist[j]
            row = []
            for k in range(x.n):
                dxv = dx_row[k]
                for l in range(y.n):
                    dyv = dy_row[l]
                    row.append(dxv if dxv >= dyv else dyv)
            rows.append(tuple(row))
    return FiniteSpace(labels, tuple(rows))


@dataclass(frozen=True)
class TestFn:
    """A rational-valued function on a finite space, one value per point.

    On a finite space every such function is continuous, so these are the
    coordinates the step-function machinery averages against.
    """

    __test__ = False  # not a test case, despite the name

    space: FiniteSpace
    values: tuple[Rat, ...]

    def __post_init__(self) -> None:
        values = tuple(as_rat(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.space.n:
            raise ValueError("need exactly one value per point of the space")

    def __call__(self, x: object) -> Rat:
        return self.values[self.space.index_of(x)]

    def scaled(self, factor: int | str | Rat) -> TestFn:
        c = as_rat(factor)
        return TestFn(self.space, tuple(c * v for v in self.values))

    def __add__(self, other: TestFn) -> TestFn:
        if other.space != self.space:
            raise ValueError("cannot add test functions on different spaces")
        return TestFn(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: TestFn) -> TestFn:
        return self + other.scaled(-1)

    def bounds(self) -> tuple[Rat, Rat]:
        return (min(self.values), max(self.values))

    @classmethod
    def constant(cls, space: FiniteSpace, c: int | str | Rat) -> TestFn:
        return cls(space, (as_rat(c),) * space.n)

    @classmethod
    def indicator(cls, space: FiniteSpace, x: object) -> TestFn:
        i = space.index_of(x)
        return cls(space, tuple(ONE if j == i else ZERO for j in range(space.n)))


@dataclass(frozen=True)
class Window:
    """A rational subinterval (a, b) of [0, 1] with a < b.

    Endpoints 0 and 1 are permitted; degenerate windows are not.
    """

    a: Rat
    b: Rat

    def __post_init__(self) -> None:
        a = as_rat(self.a)
        b = as_rat(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not (ZERO <= a < b <= ONE):
            raise ValueError(f"window endpoints must satisfy 0 <= a < b <= 1, got ({a}, {b})")

    @property
    def length(self) -> Rat:
        return self.b - self.a


FULL_WINDOW = Window(ZERO, ONE)
