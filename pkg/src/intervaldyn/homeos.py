"""Invertible coordinate changes on real intervals.

A Homeomorphism evaluates forward and backward exactly where a closed
form exists; otherwise the inverse falls back to monotone bisection
(1e-14 interval width, 100 iterations). The two arcsine changes fix
both endpoints of [0, 1]:

    ulam(x)  = (2/pi) * arcsin(sqrt(x))      [0,1] -> [0,1]
    alpha(x) = (1/pi) * arcsin(sqrt(x))      [0,1] -> [0,0.5]

ulam is implemented as exactly 2 * alpha so the two agree bit-for-bit
under doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ParameterError
from .interval import REALS, UNIT, Interval

_BISECT_TOL = 1e-14
_BISECT_MAX_ITER = 100


class Homeomorphism:
    """Base class: a strictly monotone invertible change of coordinates."""

    def domain(self) -> Interval:
        raise NotImplementedError

    def range(self) -> Interval:
        raise NotImplementedError

    def _fwd(self, x: float) -> float:
        raise NotImplementedError

    def _inv(self, y: float) -> float:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.describe()


def apply_homeo(h: Homeomorphism, x: float) -> float:
    """Forward evaluation with domain snapping."""
    return h._fwd(h.domain().snap(x))


def invert_homeo(h: Homeomorphism, y: float) -> float:
    """Inverse evaluation with range snapping."""
    return h._inv(h.range().snap(y))


def _bisect_monotone(f, target: float, lo: float, hi: float) -> float:
    """Solve f(x) = target for monotone f on [lo, hi] by bisection.

    Exact hits (including at the endpoints) are returned verbatim, which
    keeps dyadic preimages of dyadic targets exact.
    """
    flo, fhi = f(lo), f(hi)
    if flo == target:
        return lo
    if fhi == target:
        return hi
    increasing = fhi > flo
    a, b = (flo, fhi) if increasing else (fhi, flo)
    if not (a <= target <= b):
        raise DomainError(f"target {target!r} outside branch range [{a}, {b}]")
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == target:
            return mid
        if (fm < target) == increasing:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _BISECT_TOL:
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class UlamArcsin(Homeomorphism):
    """x -> (2/pi) arcsin sqrt(x), conjugating the logistic map to the tent map."""

    def domain(self) -> Interval:
        return UNIT

    def range(self) -> Interval:
        return UNIT

    def _fwd(self, x: float) -> float:
        return 2.0 * (math.asin(math.sqrt(x)) / math.pi)

    def _inv(self, y: float) -> float:
        s = math.sin(math.pi * y / 2.0)
        return s * s

    def describe(self) -> str:
        return "ulam"


@dataclass(frozen=True)
class AlphaArcsin(Homeomorphism):
    """x -> (1/pi) arcsin sqrt(x), bijection [0,1] -> [0,0.5]."""

    def domain(self) -> Interval:
        return UNIT

    def range(self) -> Interval:
        return Interval(0.0, 0.5)

    def _fwd(self, x: float) -> float:
        return math.asin(math.sqrt(x)) / math.pi

    def _inv(self, y: float) -> float:
        s = math.sin(math.pi * y)
        return s * s

    def describe(self) -> str:
        return "alpha"


@dataclass(frozen=True)
class Affine(Homeomorphism):
    p: float
    q: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p) and math.isfinite(self.q)) or self.p == 0.0:
            raise ParameterError(f"affine change needs a finite nonzero slope, got p={self.p}")

    def domain(self) -> Interval:
        return REALS

    def range(self) -> Interval:
        return REALS

    def _fwd(self, x: float) -> float:
        return self.p * x + self.q

    def _inv(self, y: float) -> float:
        return (y - self.q) / self.p

    def describe(self) -> str:
        return f"affine:p={self.p!r},q={self.q!r}"


@dataclass(frozen=True)
class Power(Homeomorphism):
    """x -> x**gamma on [0, 1], gamma > 0. Fixes both endpoints."""

    gamma: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.gamma) or self.gamma <= 0.0:
            raise ParameterError(f"power change needs gamma > 0, got {self.gamma}")

    def domain(self) -> Interval:
        return UNIT

    def range(self) -> Interval:
        return UNIT

    def _fwd(self, x: float) -> float:
        return x ** self.gamma

    def _inv(self, y: float) -> float:
        return y ** (1.0 / self.gamma)

    def describe(self) -> str:
        return f"power:g={self.gamma!r}"


@dataclass(frozen=True)
class Mobius(Homeomorphism):
    """x -> -(a + x)/(1 + b*x), its own inverse whenever a*b != 1.

    The declared [lo, hi] interval must avoid the pole at -1/b; it is
    metadata for grid-based checks. Evaluation itself is permitted at
    any pole-free real, because the involution x -> phi(phi(x)) leaves
    every bounded interval after one application.
    """

    a: float
    b: float
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self) -> None:
        if abs(self.a * self.b - 1.0) <= 1e-9:
            raise ParameterError(f"a*b = {self.a * self.b!r} too close to 1; map degenerates")
        if self.lo >= self.hi:
            raise ParameterError(f"bad declared interval [{self.lo}, {self.hi}]")
        if self.b != 0.0:
            pole = -1.0 / self.b
            if self.lo <= pole <= self.hi:
                raise ParameterError(f"declared interval [{self.lo}, {self.hi}] contains the pole {pole!r}")

    def domain(self) -> Interval:
        return REALS

    def range(self) -> Interval:
        return REALS

    def _fwd(self, x: float) -> float:
        den = 1.0 + self.b * x
        if abs(den) < 1e-300:
            raise DomainError(f"{x!r} is at the pole of {self.describe()}")
        return -(self.a + x) / den

    def _inv(self, y: float) -> float:
        return self._fwd(y)

    def describe(self) -> str:
        return f"mobius:a={self.a!r},b={self.b!r}"


@dataclass(frozen=True)
class PiecewiseLinearHomeo(Homeomorphism):
    """Strictly monotone piecewise-linear change given by knots.

    Knot abscissae must be strictly increasing and ordinates strictly
    monotone. The inverse is computed by monotone bisection.
    """

    knots: tuple[tuple[float, float], ...]

    def __init__(self, knots) -> None:
        object.__setattr__(self, "knots", tuple((float(x), float(y)) for x, y in knots))
        if len(self.knots) < 2:
            raise ParameterError("need at least two knots")
        xs = [k[0] for k in self.knots]
        ys = [k[1] for k in self.knots]
        if any(not (math.isfinite(x) and math.isfinite(y)) for x, y in self.knots):
            raise ParameterError("knots must be finite")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ParameterError("knot abscissae must be strictly increasing")
        inc = all(b > a for a, b in zip(ys, ys[1:]))
        dec = all(b < a for a, b in zip(ys, ys[1:]))
        if not (inc or dec):
            raise ParameterError("knot ordinates must be strictly monotone")

    def domain(self) -> Interval:
        return Interval(self.knots[0][0], self.knots[-1][0])

    def range(self) -> Interval:
        ys = [k[1] for k in self.knots]
        return Interval(min(ys), max(ys))

    def _fwd(self, x: float) -> float:
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

    def _inv(self, y: float) -> float:
        return _bisect_monotone(self._fwd, y, self.knots[0][0], self.knots[-1][0])

    def describe(self) -> str:
        return "pwlh:" + ";".join(f"{x!r},{y!r}" for x, y in self.knots)


@dataclass(frozen=True)
class Reflect(Homeomorphism):
    """x -> 1 - x on [0, 1]; an involution."""

    def domain(self) -> Interval:
        return UNIT

    def range(self) -> Interval:
        return UNIT

    def _fwd(self, x: float) -> float:
        return 1.0 - x

    def _inv(self, y: float) -> float:
        return 1.0 - y

    def describe(self) -> str:
        return "reflect"


@dataclass(frozen=True)
class CompositionH(Homeomorphism):
    outer: Homeomorphism
    inner: Homeomorphism

    def domain(self) -> Interval:
        return self.inner.domain()

    def range(self) -> Interval:
        inner_range = self.inner.range()
        if not inner_range.bounded:
            return REALS
        a = apply_homeo(self.outer, inner_range.lo)
        b = apply_homeo(self.outer, inner_range.hi)
        return Interval(min(a, b), max(a, b))

    def _fwd(self, x: float) -> float:
        return apply_homeo(self.outer, self.inner._fwd(x))

    def _inv(self, y: float) -> float:
        return invert_homeo(self.inner, self.outer._inv(self.outer.range().snap(y)))

    def describe(self) -> str:
        return f"({self.outer.describe()} o {self.inner.describe()})"


@dataclass(frozen=True)
class InverseH(Homeomorphism):
    base: Homeomorphism

    def domain(self) -> Interval:
        return self.base.range()

    def range(self) -> Interval:
        return self.base.domain()

    def _fwd(self, x: float) -> float:
        return self.base._inv(x)

    def _inv(self, y: float) -> float:
        return self.base._fwd(self.base.domain().snap(y))

    def describe(self) -> str:
        return f"inv({self.base.describe()})"


def identity_homeo() -> Affine:
    return Affine(1.0, 0.0)
