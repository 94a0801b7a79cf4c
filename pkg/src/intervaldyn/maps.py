"""Evaluatable descriptors of one-dimensional interval self-maps.

Descriptors are immutable values carrying an explicit domain; evaluation
outside the domain raises DomainError rather than extrapolating. All
arithmetic is binary64, so repeated calls are bit-for-bit reproducible.

Piecewise branch boundaries follow the half-open convention: the tent
map uses [0, 0.5] / (0.5, 1], its half-scale version [0, 0.25] /
(0.25, 0.5]; both branches agree at the shared endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ParameterError
from .homeos import Homeomorphism, apply_homeo, invert_homeo
from .interval import REALS, UNIT, UNIT_HALF_OPEN, Interval


class MapDescriptor:
    """Base class for interval self-maps."""

    def domain(self) -> Interval:
        raise NotImplementedError

    def _raw(self, x: float) -> float:
        """Evaluate at a point already inside the domain."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.describe()


def eval_map(m: MapDescriptor, x: float) -> float:
    """Single application of the map, with domain snapping.

    The result is not required to lie in the domain (a descriptor may
    legitimately describe a non-self-map, say the doubling leg of a
    semiconjugacy); orbit and iterate do enforce self-mapping, snapping
    each computed value back into the domain.
    """
    return m._raw(m.domain().snap(x))


def iterate(m: MapDescriptor, x: float, n: int) -> float:
    """n-fold application; iterate(m, x, 0) returns x (snapped into the domain)."""
    if n < 0 or n != int(n):
        raise ParameterError(f"iteration count must be a nonnegative integer, got {n!r}")
    dom = m.domain()
    cur = dom.snap(x)
    for k in range(int(n)):
        try:
            cur = dom.snap(m._raw(cur))
        except DomainError as exc:
            raise DomainError(f"iterate {k + 1} escaped the domain: {exc}") from exc
    return cur


@dataclass(frozen=True)
class Orbit:
    """A finite iterate sequence: values[0] is the seed, values[k] = f(values[k-1])."""

    seed: float
    values: tuple[float, ...]
    map_id: str


def orbit(m: MapDescriptor, x0: float, n: int) -> Orbit:
    """Orbit of length n+1 starting at x0."""
    if n < 1 or n != int(n):
        raise ParameterError(f"orbit length must be a positive integer, got {n!r}")
    dom = m.domain()
    cur = dom.snap(x0)
    values = [cur]
    for k in range(int(n)):
        try:
            cur = dom.snap(m._raw(cur))
        except DomainError as exc:
            raise DomainError(f"iterate {k + 1} escaped the domain: {exc}") from exc
        values.append(cur)
    return Orbit(seed=values[0], values=tuple(values), map_id=m.describe())


def fixed_points(m: MapDescriptor, lo: float, hi: float, tol: float) -> list[float]:
    """Roots of f(x) = x in [lo, hi], found by sign-change scanning.

    A 10^4-point grid is scanned for sign changes of f(x) - x, each
    refined by bisection to width tol. Tangential fixed points (where
    f - x touches zero without changing sign) are not guaranteed found.
    """
    if tol <= 0.0 or not math.isfinite(tol):
        raise ParameterError(f"tolerance must be positive, got {tol!r}")
    dom = m.domain()
    lo, hi = dom.snap(lo), dom.snap(hi)
    if lo >= hi:
        raise DomainError(f"empty scan interval [{lo}, {hi}]")

    def g(x: float) -> float:
        return eval_map(m, x) - x

    n_grid = 10**4
    xs = [lo + (hi - lo) * i / (n_grid - 1) for i in range(n_grid)]
    roots: list[float] = []
    prev_x, prev_g = xs[0], g(xs[0])
    if prev_g == 0.0:
        roots.append(prev_x)
    for x in xs[1:]:
        cur_g = g(x)
        if cur_g == 0.0:
            roots.append(x)
        elif prev_g * cur_g < 0.0:
            a, b = prev_x, x
            while b - a > tol:
                mid = 0.5 * (a + b)
                gm = g(mid)
                if gm == 0.0:
                    a = b = mid
                    break
                if (gm < 0.0) == (prev_g < 0.0):
                    a = mid
                else:
                    b = mid
            roots.append(0.5 * (a + b))
        prev_x, prev_g = x, cur_g
    roots.sort()
    merged: list[float] = []
    for r in roots:
        if not merged or r - merged[-1] > tol:
            merged.append(r)
    return merged


def sensitivity_report(m: MapDescriptor, x0: float, delta: float, n: int) -> list[float]:
    """Separations |f^k(x0) - f^k(x0 + delta)| for k = 0..n."""
    if n < 1 or n != int(n):
        raise ParameterError(f"step count must be a positive integer, got {n!r}")
    dom = m.domain()
    a, b = dom.snap(x0), dom.snap(x0 + delta)
    seps = [abs(a - b)]
    for k in range(int(n)):
        try:
            a, b = dom.snap(m._raw(a)), dom.snap(m._raw(b))
        except DomainError as exc:
            raise DomainError(f"iterate {k + 1} escaped the domain: {exc}") from exc
        seps.append(abs(a - b))
    return seps


# --- builtin families ------------------------------------------------------


@dataclass(frozen=True)
class Logistic(MapDescriptor):
    """x -> 4x(1-x) on [0, 1]."""

    def domain(self) -> Interval:
        return UNIT

    def _raw(self, x: float) -> float:
        return 4.0 * x * (1.0 - x)

    def describe(self) -> str:
        return "logistic"


@dataclass(frozen=True)
class Tent(MapDescriptor):
    """x -> 1 - |1 - 2x| on [0, 1]: 2x below the peak, 2 - 2x above."""

    def domain(self) -> Interval:
        return UNIT

    def _raw(self, x: float) -> float:
        return 2.0 * x if x <= 0.5 else 2.0 - 2.0 * x

    def describe(self) -> str:
        return "tent"


@dataclass(frozen=True)
class HalfTent(MapDescriptor):
    """The tent shape on [0, 0.5]: 2x on [0, 0.25], 1 - 2x on (0.25, 0.5]."""

    def domain(self) -> Interval:
        return Interval(0.0, 0.5)

    def _raw(self, x: float) -> float:
        return 2.0 * x if x <= 0.25 else 1.0 - 2.0 * x

    def describe(self) -> str:
        return "halftent"


@dataclass(frozen=True)
class Quadratic(MapDescriptor):
    """x -> 2x^2 - 1 on all of R (restricts to a self-map of [-1, 1])."""

    def domain(self) -> Interval:
        return REALS

    def _raw(self, x: float) -> float:
        return 2.0 * x * x - 1.0

    def describe(self) -> str:
        return "quadratic"


@dataclass(frozen=True)
class Doubling(MapDescriptor):
    """x -> 2x mod 1 on [0, 1); a left shift on binary digits."""

    def domain(self) -> Interval:
        return UNIT_HALF_OPEN

    def _raw(self, x: float) -> float:
        y = 2.0 * x
        return y - 1.0 if y >= 1.0 else y

    def describe(self) -> str:
        return "doubling"


@dataclass(frozen=True)
class Cosine(MapDescriptor):
    """x -> cos x on R."""

    def domain(self) -> Interval:
        return REALS

    def _raw(self, x: float) -> float:
        return math.cos(x)

    def describe(self) -> str:
        return "cosine"


@dataclass(frozen=True)
class SineSquared(MapDescriptor):
    """x -> sin^2(pi x) on [0, 1]; the non-invertible factor map carrying
    the doubling map onto the logistic map."""

    def domain(self) -> Interval:
        return UNIT

    def _raw(self, x: float) -> float:
        s = math.sin(math.pi * x)
        return s * s

    def describe(self) -> str:
        return "sinsq"


@dataclass(frozen=True)
class Hyperbola(MapDescriptor):
    """x -> sqrt((1 - e^2)(a^2 - x^2)).

    The declared domain is R; points where the radicand is negative
    raise DomainError at evaluation (no complex values here).
    """

    e: float
    a: float

    def __post_init__(self) -> None:
        e2 = self.e * self.e
        if not (math.isfinite(self.e) and math.isfinite(self.a)):
            raise ParameterError("hyperbola parameters must be finite")
        if abs(e2 - 1.0) <= 1e-9 or abs(e2 - 2.0) <= 1e-9:
            raise ParameterError(f"e^2 = {e2!r} too close to 1 or 2; the iterate formula degenerates")
        if self.a <= 0.0:
            raise ParameterError(f"scale a must be positive, got {self.a!r}")

    def domain(self) -> Interval:
        return REALS

    def _raw(self, x: float) -> float:
        rad = (1.0 - self.e * self.e) * (self.a * self.a - x * x)
        if rad < 0.0:
            raise DomainError(f"hyperbola radicand {rad!r} negative at x={x!r}")
        return math.sqrt(rad)

    def describe(self) -> str:
        return f"hyperbola:e={self.e!r},a={self.a!r}"


@dataclass(frozen=True)
class Verhulst(MapDescriptor):
    """Population recurrence p -> p(m - n p) on all of R.

    With m = n = 4 this coincides with the logistic map on [0, 1].
    """

    m: float
    n: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.m) and math.isfinite(self.n)):
            raise ParameterError("growth and crowding coefficients must be finite")

    def domain(self) -> Interval:
        return REALS

    def _raw(self, x: float) -> float:
        return x * (self.m - self.n * x)

    def describe(self) -> str:
        return f"verhulst:m={self.m!r},n={self.n!r}"


@dataclass(frozen=True)
class PiecewiseLinear(MapDescriptor):
    """Linear interpolation between knots with strictly increasing abscissae."""

    knots: tuple[tuple[float, float], ...]

    def __init__(self, knots) -> None:
        object.__setattr__(self, "knots", tuple((float(x), float(y)) for x, y in knots))
        if len(self.knots) < 2:
            raise ParameterError("need at least two knots")
        if any(not (math.isfinite(x) and math.isfinite(y)) for x, y in self.knots):
            raise ParameterError("knots must be finite")
        xs = [k[0] for k in self.knots]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ParameterError("knot abscissae must be strictly increasing")

    def domain(self) -> Interval:
        return Interval(self.knots[0][0], self.knots[-1][0])

    def _raw(self, x: float) -> float:
        knots = self.knots
        lo, hi = 0, len(knots) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if x < knots[mid][0]:
                hi = mid
            else:
                lo = mid
        (x0, y0), (x1, y1) = knots[lo], knots[hi]
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0)

    def describe(self) -> str:
        return "pwl:" + ";".join(f"{x!r},{y!r}" for x, y in self.knots)


_GRID_CHECK_POINTS = 1000


@dataclass(frozen=True)
class Unimodal(MapDescriptor):
    """Tent-shaped map on [0, 1]: an increasing branch l on [0, v] with
    l(0) = 0, then a decreasing branch r on (v, 1] with r(1) = 0."""

    v: float
    left: MapDescriptor
    right: MapDescriptor

    def __post_init__(self) -> None:
        if not (0.0 < self.v < 1.0):
            raise ParameterError(f"turning point must lie in (0, 1), got {self.v!r}")
        if abs(eval_map(self.left, 0.0)) > 1e-12:
            raise ParameterError("left branch must vanish at 0")
        if abs(eval_map(self.right, 1.0)) > 1e-12:
            raise ParameterError("right branch must vanish at 1")
        prev = eval_map(self.left, 0.0)
        for i in range(1, _GRID_CHECK_POINTS):
            cur = eval_map(self.left, self.v * i / (_GRID_CHECK_POINTS - 1))
            if cur < prev - 1e-12:
                raise ParameterError("left branch is not non-decreasing on [0, v]")
            prev = cur
        prev = eval_map(self.right, self.v)
        for i in range(1, _GRID_CHECK_POINTS):
            cur = eval_map(self.right, self.v + (1.0 - self.v) * i / (_GRID_CHECK_POINTS - 1))
            if cur > prev + 1e-12:
                raise ParameterError("right branch is not non-increasing on (v, 1]")
            prev = cur

    def domain(self) -> Interval:
        return UNIT

    def _raw(self, x: float) -> float:
        return eval_map(self.left, x) if x <= self.v else eval_map(self.right, x)

    def describe(self) -> str:
        return f"unimodal(v={self.v!r};l={self.left.describe()};r={self.right.describe()})"


@dataclass(frozen=True)
class Composed(MapDescriptor):
    """outer(inner(x)); the domain is inner's domain."""

    outer: MapDescriptor
    inner: MapDescriptor

    def domain(self) -> Interval:
        return self.inner.domain()

    def _raw(self, x: float) -> float:
        return eval_map(self.outer, self.inner._raw(x))

    def describe(self) -> str:
        return f"comp:{self.outer.describe()}|{self.inner.describe()}"


@dataclass(frozen=True)
class Conjugated(MapDescriptor):
    """The base map rewritten in h-coordinates: x -> h(f(h^{-1}(x)))."""

    base: MapDescriptor
    change: Homeomorphism

    def domain(self) -> Interval:
        return self.change.range()

    def _raw(self, x: float) -> float:
        return apply_homeo(self.change, eval_map(self.base, invert_homeo(self.change, x)))

    def describe(self) -> str:
        return f"conj:{self.base.describe()}|{self.change.describe()}"


# --- convenience builders used by tests and the CLI -------------------------


def reflect_map() -> PiecewiseLinear:
    """x -> 1 - x on [0, 1] as a map descriptor."""
    return PiecewiseLinear([(0.0, 1.0), (1.0, 0.0)])


def identity_map(lo: float = 0.0, hi: float = 1.0) -> PiecewiseLinear:
    return PiecewiseLinear([(lo, lo), (hi, hi)])


def affine_map(p: float, q: float, lo: float, hi: float) -> PiecewiseLinear:
    """x -> p x + q restricted to [lo, hi], realized exactly on two knots."""
    if lo >= hi:
        raise ParameterError(f"bad interval [{lo}, {hi}]")
    return PiecewiseLinear([(lo, p * lo + q), (hi, p * hi + q)])
