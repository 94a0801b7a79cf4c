"""Numerical verification of (semi-)conjugacy relations.

Maps f and g are topologically conjugate under an invertible h when
h(f(x)) = g(h(x)) everywhere; dropping invertibility of h gives a
semiconjugacy f(h(x)) = h(g(x)). Both relations are checked on sample
grids, reporting the residual profile and its maximum.

Verification grids exclude the domain endpoints (samples are offset by
half a grid step): the arcsine coordinate changes have infinite
derivative at 0 and 1, where pure roundoff would otherwise inflate the
residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .errors import DomainError, ParameterError
from .homeos import Homeomorphism, Mobius, apply_homeo
from .maps import Conjugated, MapDescriptor, eval_map, iterate


@dataclass(frozen=True)
class ConjugacyReport:
    """Residuals |h(f(x)) - g(h(x))| over a sample grid."""

    grid: tuple[float, ...]
    residuals: tuple[float, ...]
    max_residual: float
    argmax: float

    @classmethod
    def from_residuals(cls, grid: list[float], residuals: list[float]) -> "ConjugacyReport":
        worst, arg = -1.0, grid[0]
        for x, r in zip(grid, residuals):
            if r > worst:
                worst, arg = r, x
        return cls(tuple(grid), tuple(residuals), worst, arg)


@dataclass(frozen=True)
class Conflict:
    """Evidence that no single-valued change of coordinates fits the data:
    two arguments that coincide on one side while their images stand apart."""

    left: float
    right: float
    image_gap: float
    step: Optional[int] = None

    def __str__(self) -> str:
        where = f" at step {self.step}" if self.step is not None else ""
        return (f"conflict{where}: arguments {self.left!r} and {self.right!r} "
                f"collide while images differ by {self.image_gap!r}")


def conjugate_map(f: MapDescriptor, h: Homeomorphism) -> Conjugated:
    """The map f rewritten in h-coordinates, x -> h(f(h^{-1}(x))).

    Any incompatibility between the coordinate change and f's domain
    surfaces as DomainError at evaluation time.
    """
    return Conjugated(base=f, change=h)


def verify_conjugacy(
    f: MapDescriptor,
    g: MapDescriptor,
    h: Homeomorphism,
    samples: int,
) -> ConjugacyReport:
    """Residuals of h(f(x)) = g(h(x)) on an interior grid of f's domain."""
    if samples < 2:
        raise ParameterError(f"need at least 2 samples, got {samples!r}")
    grid = f.domain().interior_grid(samples)
    residuals = []
    for x in grid:
        try:
            residuals.append(abs(apply_homeo(h, eval_map(f, x)) - eval_map(g, apply_homeo(h, x))))
        except DomainError as exc:
            raise DomainError(f"conjugacy check failed at x={x!r}: {exc}") from exc
    return ConjugacyReport.from_residuals(grid, residuals)


def verify_semiconjugacy(
    f: MapDescriptor,
    g: MapDescriptor,
    h: MapDescriptor,
    lo: float,
    hi: float,
    samples: int,
) -> ConjugacyReport:
    """Residuals of f(h(x)) = h(g(x)) on [lo, hi); h need not be invertible.

    The grid is half-open so that maps defined on [0, 1) can be checked
    up to (but excluding) the right endpoint.
    """
    if samples < 2:
        raise ParameterError(f"need at least 2 samples, got {samples!r}")
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise DomainError(f"bad check interval [{lo}, {hi})")
    grid = [lo + (hi - lo) * i / samples for i in range(samples)]
    residuals = []
    for x in grid:
        try:
            residuals.append(abs(eval_map(f, eval_map(h, x)) - eval_map(h, eval_map(g, x))))
        except DomainError as exc:
            raise DomainError(f"semiconjugacy check failed at x={x!r}: {exc}") from exc
    return ConjugacyReport.from_residuals(grid, residuals)


def periodicity_order(
    m: MapDescriptor,
    p_max: int,
    samples: int,
    tol: float = 1e-10,
) -> Optional[int]:
    """Smallest p <= p_max with f^p = identity on an interior sample grid
    (sup norm below tol), or None when no such p exists.

    The map must send its domain into itself for the iterates to make
    sense; a map of order p under composition satisfies psi^2 = identity
    whenever it is continuous, so orders above 2 indicate a defect.
    """
    if p_max < 1 or p_max != int(p_max):
        raise ParameterError(f"p_max must be a positive integer, got {p_max!r}")
    if samples < 2:
        raise ParameterError(f"need at least 2 samples, got {samples!r}")
    grid = m.domain().interior_grid(samples)
    for p in range(1, int(p_max) + 1):
        worst = 0.0
        for x in grid:
            worst = max(worst, abs(iterate(m, x, p) - x))
            if worst >= tol:
                break
        if worst < tol:
            return p
    return None


def mobius_involution(a: float, b: float, lo: float = 0.0, hi: float = 1.0) -> Mobius:
    """The family phi(x) = -(a + x)/(1 + b x) on a pole-free interval.

    Direct composition shows phi(phi(x)) simplifies to x whenever
    a*b != 1, so each member is an involution; the periodicity checks
    let the numbers confirm this.
    """
    return Mobius(a=a, b=b, lo=lo, hi=hi)


def herschel_relation_residual(
    f_outer: Callable[[float], float],
    phi: Homeomorphism,
    lo: float,
    hi: float,
    samples: int,
) -> float:
    """Max residual of the functional relation x + phi(x) + f(x*phi(x)) = 0
    over an inclusive grid of [lo, hi]."""
    if samples < 2:
        raise ParameterError(f"need at least 2 samples, got {samples!r}")
    worst = 0.0
    for i in range(samples):
        x = lo + (hi - lo) * i / (samples - 1)
        px = apply_homeo(phi, x)
        worst = max(worst, abs(x + px + f_outer(x * px)))
    return worst


def orbit_consistency(
    f: MapDescriptor,
    g: MapDescriptor,
    pairs: list[tuple[float, float]],
    n: int,
    tol: float,
) -> Optional[Conflict]:
    """Test whether a putative pairing a -> b between f-arguments and
    g-arguments can extend to a function intertwining the two maps.

    If two f-orbits collide at step k (within tol) while the paired
    g-orbits stay at least 10*tol apart, no single-valued h can map one
    side onto the other; the offending step is reported. Returns None
    when no such obstruction shows up.
    """
    if n < 0 or n != int(n):
        raise ParameterError(f"step count must be a nonnegative integer, got {n!r}")
    if tol <= 0.0:
        raise ParameterError(f"tolerance must be positive, got {tol!r}")
    f_orbits, g_orbits = [], []
    for a, b in pairs:
        f_orbits.append([iterate(f, a, k) for k in range(int(n) + 1)])
        g_orbits.append([iterate(g, b, k) for k in range(int(n) + 1)])
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            for k in range(int(n) + 1):
                if abs(f_orbits[i][k] - f_orbits[j][k]) < tol:
                    gap = abs(g_orbits[i][k] - g_orbits[j][k])
                    if gap >= 10.0 * tol:
                        return Conflict(left=pairs[i][0], right=pairs[j][0], image_gap=gap, step=k)
    return None


def propagate_partial_conjugacy(
    f: MapDescriptor,
    g: MapDescriptor,
    seed_lo: float,
    seed_hi: float,
    h_seed: Homeomorphism,
    depth: int,
    grid: int,
    tol: float,
) -> Union[list[tuple[float, float]], Conflict]:
    """Extend a coordinate change known on a seed interval along orbits.

    A value h(x) = y forces h(f^k(x)) = g^k(y), so seeding h on
    [seed_lo, seed_hi] determines it on every forward image of the seed.
    The table {(f^k(x), g^k(h_seed(x)))} is returned sorted by first
    coordinate, unless two entries collide within tol on the first
    coordinate while standing more than 10*tol apart on the second, in
    which case the propagation is self-contradictory and the collision
    is returned instead.
    """
    if depth < 1 or depth != int(depth):
        raise ParameterError(f"depth must be a positive integer, got {depth!r}")
    if grid < 2:
        raise ParameterError(f"need at least 2 seed points, got {grid!r}")
    if tol <= 0.0:
        raise ParameterError(f"tolerance must be positive, got {tol!r}")
    entries: list[tuple[float, float]] = []
    for i in range(grid):
        x = seed_lo + (seed_hi - seed_lo) * i / (grid - 1)
        fx = iterate(f, x, 0)
        gy = apply_homeo(h_seed, x)
        entries.append((fx, gy))
        for _ in range(int(depth)):
            fx = eval_map(f, fx)
            gy = eval_map(g, gy)
            entries.append((fx, gy))
    entries.sort()
    for i in range(len(entries)):
        j = i + 1
        while j < len(entries) and entries[j][0] - entries[i][0] < tol:
            gap = abs(entries[j][1] - entries[i][1])
            if gap > 10.0 * tol:
                return Conflict(left=entries[i][0], right=entries[j][0], image_gap=gap)
            j += 1
    return entries
