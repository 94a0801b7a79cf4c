"""Cobweb paths, idempotent-map structure, and zero-preimage density.

A cobweb path traces an orbit against the diagonal: from (x, x) go
vertically to the graph point (x, f(x)), then horizontally back to the
diagonal at (f(x), f(x)), and repeat.

The zero-preimage set of a tent-shaped map g collects every point that
lands on 0 after finitely many steps. Whether that set fills [0, 1]
densely is the operative criterion for g being conjugate to the tent
map itself; here only the finite-depth gap statistic is computed, and
the density verdict is a caller-thresholded heuristic, not a theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, ParameterError
from .interval import UNIT
from .maps import MapDescriptor, Tent, Unimodal, eval_map
from .homeos import _bisect_monotone

_CONVERGENCE_TOL = 1e-12
_MAX_COBWEB_STEPS = 10**6
_MAX_PREIMAGE_DEPTH = 20  # the set grows like 2^depth
_DEDUP_TOL = 1e-12


@dataclass(frozen=True)
class CobwebPath:
    """Alternating vertical/horizontal polyline between graph and diagonal.

    points[0] is (seed, seed); every second point lies on the map's
    graph; consecutive points always share one coordinate.
    """

    points: tuple[tuple[float, float], ...]
    seed: float
    converged: bool
    limit: Optional[float]

    def orbit_values(self) -> list[float]:
        """The orbit x0, f(x0), ... read off the diagonal points."""
        return [self.points[0][0]] + [p[1] for p in self.points[1::2]]


def cobweb_path(m: MapDescriptor, x0: float, steps: int) -> CobwebPath:
    """Cobweb with 2*steps + 1 points; convergence is flagged when two
    successive orbit values differ by less than 1e-12 (the full path is
    still produced)."""
    if steps < 1 or steps != int(steps):
        raise ParameterError(f"steps must be a positive integer, got {steps!r}")
    if steps > _MAX_COBWEB_STEPS:
        raise ParameterError(f"steps {steps} exceeds the cap of {_MAX_COBWEB_STEPS}")
    dom = m.domain()
    cur = dom.snap(x0)
    points = [(cur, cur)]
    converged, limit = False, None
    for k in range(int(steps)):
        try:
            nxt = dom.snap(m._raw(cur))
        except DomainError as exc:
            raise DomainError(f"cobweb escaped the domain at step {k + 1}: {exc}") from exc
        points.append((cur, nxt))
        points.append((nxt, nxt))
        if not converged and abs(nxt - cur) < _CONVERGENCE_TOL:
            converged, limit = True, nxt
        cur = nxt
    return CobwebPath(points=tuple(points), seed=points[0][0], converged=converged, limit=limit)


@dataclass(frozen=True)
class IdempotentReport:
    is_idempotent: bool
    image_lo: float
    image_hi: float
    identity_on_image: bool


def check_idempotent_structure(m: MapDescriptor, samples: int, tol: float) -> IdempotentReport:
    """Test phi(phi(x)) = phi(x) on a grid.

    An idempotent continuous map retracts its domain onto an interval
    [a, b] on which it acts as the identity, so identity_on_image must
    come out true whenever is_idempotent does.
    """
    if samples < 2:
        raise ParameterError(f"need at least 2 samples, got {samples!r}")
    if tol <= 0.0:
        raise ParameterError(f"tolerance must be positive, got {tol!r}")
    dom = m.domain()
    if not dom.bounded:
        raise DomainError(f"need a bounded domain, got {dom}")
    worst_idem = 0.0
    image = []
    for i in range(samples):
        x = dom.lo + (dom.hi - dom.lo) * i / (samples - 1)
        y = eval_map(m, x)
        image.append(y)
        worst_idem = max(worst_idem, abs(eval_map(m, y) - y))
    worst_identity = max(abs(eval_map(m, y) - y) for y in image)
    return IdempotentReport(
        is_idempotent=worst_idem < tol,
        image_lo=min(image),
        image_hi=max(image),
        identity_on_image=worst_identity < tol,
    )


@dataclass(frozen=True)
class PreimageSet:
    """Sorted points of [0, 1] that reach 0 within `depth` steps."""

    depth: int
    points: tuple[float, ...]
    largest_gap: float


@dataclass(frozen=True)
class DensityReport:
    largest_gap: float
    count: int
    dense_estimate: bool


def _branch_structure(m: MapDescriptor) -> float:
    """Locate the turning point of a tent-shaped map on [0, 1].

    Builtin cases are exact; anything else is grid-scanned for the
    maximum and refined by golden-section search, then validated:
    the map must vanish at both endpoints and be non-decreasing left of
    the turning point, non-increasing right of it.
    """
    if isinstance(m, Tent):
        return 0.5
    if isinstance(m, Unimodal):
        return m.v
    dom = m.domain()
    if not (dom.lo == 0.0 and dom.hi == 1.0):
        raise ParameterError(f"zero-preimage analysis needs a map of [0, 1], got domain {dom}")
    if abs(eval_map(m, 0.0)) > 1e-9 or abs(eval_map(m, 1.0)) > 1e-9:
        raise ParameterError("map must vanish at both endpoints of [0, 1]")
    n = 1000
    vals = [eval_map(m, i / n) for i in range(n + 1)]
    k = max(range(n + 1), key=lambda i: vals[i])
    if k == 0 or k == n:
        raise ParameterError("no interior maximum; map is not tent-shaped")
    if any(vals[i + 1] < vals[i] - 1e-9 for i in range(k)):
        raise ParameterError("map is not non-decreasing left of its maximum")
    if any(vals[i + 1] > vals[i] + 1e-9 for i in range(k, n)):
        raise ParameterError("map is not non-increasing right of its maximum")
    lo, hi = (k - 1) / n, (k + 1) / n
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = eval_map(m, c), eval_map(m, d)
    while b - a > 1e-14:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = eval_map(m, c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = eval_map(m, d)
    return 0.5 * (a + b)


def _dedup_sorted(points: list[float]) -> list[float]:
    points.sort()
    out: list[float] = []
    for p in points:
        if not out or p - out[-1] > _DEDUP_TOL:
            out.append(p)
    return out


def zero_preimage_set(g2: MapDescriptor, depth: int) -> PreimageSet:
    """All points of [0, 1] mapped to 0 within `depth` applications of g2.

    Each target is pulled back through the increasing branch on [0, v]
    and the decreasing branch on [v, 1] by monotone bisection whenever
    it lies in the branch's range. Since g2(0) = 0 the preimage levels
    are nested, so the depth-k set is just the k-th pullback of {0}.
    Exact bisection hits keep the tent map's dyadic preimages exact.
    """
    if depth < 1 or depth != int(depth):
        raise ParameterError(f"depth must be a positive integer, got {depth!r}")
    if depth > _MAX_PREIMAGE_DEPTH:
        raise ParameterError(f"depth {depth} exceeds the cap of {_MAX_PREIMAGE_DEPTH}")
    v = _branch_structure(g2)

    def fwd(x: float) -> float:
        return eval_map(g2, x)

    def pullback(t: float, lo: float, hi: float) -> Optional[float]:
        # branch range with a roundoff allowance at the rim
        flo, fhi = fwd(lo), fwd(hi)
        rlo, rhi = min(flo, fhi), max(flo, fhi)
        if t < rlo - _DEDUP_TOL or t > rhi + _DEDUP_TOL:
            return None
        return _bisect_monotone(fwd, min(max(t, rlo), rhi), lo, hi)

    level = [0.0]
    for _ in range(int(depth)):
        nxt: list[float] = []
        for t in level:
            for branch in (pullback(t, 0.0, v), pullback(t, v, 1.0)):
                if branch is not None:
                    nxt.append(branch)
        level = _dedup_sorted(nxt)
        if not level:
            break
    points = [p for p in level if UNIT.contains(p)]
    if not points:
        return PreimageSet(depth=int(depth), points=(), largest_gap=1.0)
    gaps = [points[0] - 0.0] + [b - a for a, b in zip(points, points[1:])] + [1.0 - points[-1]]
    return PreimageSet(depth=int(depth), points=tuple(points), largest_gap=max(gaps))


def density_report(pset: PreimageSet, threshold: float) -> DensityReport:
    """Gap statistic with a caller-thresholded density estimate.

    Purely a finite-depth estimator: a small largest gap suggests (but
    does not prove) that the full preimage set is dense.
    """
    if threshold <= 0.0:
        raise ParameterError(f"threshold must be positive, got {threshold!r}")
    return DensityReport(
        largest_gap=pset.largest_gap,
        count=len(pset.points),
        dense_estimate=pset.largest_gap < threshold,
    )
