"""The logistic-map random-number pipeline and its finite-precision failure.

Iterates of 4x(1-x) from a generic seed distribute along the arcsine
law, whose CDF is the same (2/pi) arcsin sqrt(x) that conjugates the
logistic map to the tent map - one function in two roles. Applying it
pointwise therefore uniformizes an orbit, and composing with an inverse
CDF transports the sample to any target distribution on [0, 1].

The catch: in alpha-coordinates (x = sin^2(pi*alpha)) the dynamics is
the doubling map, a pure left shift of binary digits. A b-bit machine
word therefore shifts to exactly zero within b steps, which is the
classical objection to using the map as a generator with fixed-point
arithmetic. FixedPointWord models this with exact integers.

The default ergodic seed is 0.123456789; seeds such as 0, 1, 0.5 or
0.75 land on fixed points or short preperiodic tails and are degenerate
for sampling purposes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, EmptySampleError, ParameterError
from .homeos import UlamArcsin, apply_homeo, _bisect_monotone
from .maps import Logistic, Orbit, orbit

DEFAULT_SEED = 0.123456789
DEGENERATE_SEEDS = (0.0, 1.0, 0.5, 0.75)

_ULAM = UlamArcsin()


def arcsine_cdf(x: float) -> float:
    """CDF of the logistic map's invariant measure: apply_homeo(UlamArcsin, x)."""
    return apply_homeo(_ULAM, x)


@dataclass(frozen=True)
class FixedPointWord:
    """A b-bit binary fraction value / 2^bits in [0, 1); doubling it is the
    exact shift value -> (2*value) mod 2^bits."""

    bits: int
    value: int

    def __post_init__(self) -> None:
        if self.bits < 1 or self.bits > 63 or self.bits != int(self.bits):
            raise ParameterError(f"word width must be an integer in 1..63, got {self.bits!r}")
        if self.value != int(self.value) or not (0 <= self.value < 2**self.bits):
            raise ParameterError(f"value {self.value!r} does not fit in {self.bits} bits")

    def fraction(self) -> float:
        return self.value / 2.0**self.bits


@dataclass(frozen=True)
class DistributionSpec:
    """A target distribution on [0, 1] given by its CDF.

    The CDF must be non-decreasing with F(0) = 0 and F(1) = 1 (checked
    on a 1000-point grid); a missing inverse is filled in by monotone
    bisection.
    """

    cdf: Callable[[float], float]
    inverse_cdf: Callable[[float], float]

    def __init__(self, cdf: Callable[[float], float],
                 inverse_cdf: Optional[Callable[[float], float]] = None) -> None:
        object.__setattr__(self, "cdf", cdf)
        if inverse_cdf is None:
            inverse_cdf = lambda u: _bisect_monotone(cdf, u, 0.0, 1.0)
        object.__setattr__(self, "inverse_cdf", inverse_cdf)
        if abs(cdf(0.0)) > 1e-9 or abs(cdf(1.0) - 1.0) > 1e-9:
            raise ParameterError("CDF must satisfy F(0) = 0 and F(1) = 1")
        prev = cdf(0.0)
        for i in range(1, 1000):
            cur = cdf(i / 999)
            if cur < prev - 1e-12:
                raise ParameterError(f"CDF decreases near {i / 999!r}")
            prev = cur
        for i in range(1, 1000):
            u = i / 1000
            if abs(self.cdf(self.inverse_cdf(u)) - u) > 1e-9:
                raise ParameterError(f"inverse CDF fails the round trip at u={u!r}")


def uniform_distribution() -> DistributionSpec:
    return DistributionSpec(cdf=lambda x: x, inverse_cdf=lambda u: u)


def square_distribution() -> DistributionSpec:
    """F(x) = x^2, inverse sqrt(u)."""
    return DistributionSpec(cdf=lambda x: x * x, inverse_cdf=math.sqrt)


def logistic_sequence(x0: float, n: int) -> Orbit:
    """Orbit of the logistic map from x0 in (0, 1), length n+1."""
    if math.isnan(x0) or not (0.0 < x0 < 1.0):
        raise DomainError(f"seed must lie strictly inside (0, 1), got {x0!r}")
    if n < 1 or n != int(n):
        raise ParameterError(f"need a positive number of steps, got {n!r}")
    return orbit(Logistic(), x0, int(n))


def uniformize(o: Orbit) -> list[float]:
    """Transport a logistic orbit to [0, 1] uniform coordinates by applying
    the arcsine CDF pointwise."""
    if o.map_id != "logistic":
        raise ParameterError(f"expected a logistic orbit, got one from {o.map_id!r}")
    return [apply_homeo(_ULAM, v) for v in o.values]


def transform_to(values: Sequence[float], dist: DistributionSpec) -> list[float]:
    """Push uniform samples through the inverse CDF; the output's empirical
    CDF approximates dist.cdf."""
    return [dist.inverse_cdf(u) for u in values]


def ks_distance(sample: Sequence[float], cdf: Callable[[float], float]) -> float:
    """Two-sided empirical-CDF discrepancy sup_i max(|i/n - F(s_i)|,
    |(i-1)/n - F(s_i)|) over the sorted sample."""
    n = len(sample)
    if n == 0:
        raise EmptySampleError("cannot compute a KS distance of an empty sample")
    s = np.sort(np.asarray(sample, dtype=float))
    f = np.fromiter((cdf(v) for v in s), dtype=float, count=n)
    i = np.arange(1, n + 1, dtype=float)
    d = np.maximum(np.abs(i / n - f), np.abs((i - 1.0) / n - f))
    return float(d.max())


def histogram(sample: Sequence[float], bins: int) -> list[int]:
    """Equal-width bin counts on [0, 1]; values equal to 1.0 go in the
    last bin; counts sum to the sample size."""
    if bins < 1 or bins != int(bins):
        raise ParameterError(f"need at least one bin, got {bins!r}")
    counts = [0] * int(bins)
    for v in sample:
        if math.isnan(v) or v < 0.0 or v > 1.0:
            raise DomainError(f"sample value {v!r} outside [0, 1]")
        counts[min(int(v * bins), bins - 1)] += 1
    return counts


def doubling_collapse(word: FixedPointWord, max_steps: int) -> Optional[int]:
    """Steps until the exact doubling shift reaches zero, or None past
    max_steps. Any b-bit word collapses within b steps (every doubling
    discards the leading bit), so max_steps >= bits always succeeds."""
    if max_steps < 0 or max_steps != int(max_steps):
        raise ParameterError(f"max_steps must be a nonnegative integer, got {max_steps!r}")
    modulus = 2**word.bits
    value, steps = word.value, 0
    while value != 0:
        if steps >= max_steps:
            return None
        value = (2 * value) % modulus
        steps += 1
    return steps


@dataclass(frozen=True)
class FixedPrecisionReport:
    """The x-side view of a collapsing fixed-point alpha-orbit."""

    bits: int
    initial_value: int
    steps_to_zero: int
    alphas: tuple[float, ...]
    xs: tuple[float, ...]


def fixed_precision_logistic(word: FixedPointWord, n: int) -> FixedPrecisionReport:
    """Seed x = sin^2(pi*alpha) from a b-bit alpha and follow the doubling
    word; the reported x-sequence reaches 0 within bits steps and stays
    there, which is the finite-precision failure of the generator."""
    if n < 1 or n != int(n):
        raise ParameterError(f"need a positive number of steps, got {n!r}")
    steps = doubling_collapse(word, word.bits)
    assert steps is not None  # collapse within bits steps is structural
    modulus = 2**word.bits
    value = word.value
    alphas, xs = [], []
    for _ in range(int(n) + 1):
        alpha = value / modulus
        s = math.sin(math.pi * alpha)
        alphas.append(alpha)
        xs.append(s * s)
        value = (2 * value) % modulus
    return FixedPrecisionReport(
        bits=word.bits,
        initial_value=word.value,
        steps_to_zero=steps,
        alphas=tuple(alphas),
        xs=tuple(xs),
    )
