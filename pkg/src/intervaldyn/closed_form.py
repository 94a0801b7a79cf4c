"""Closed-form n-th iterates of the quadratic and hyperbola families,
plus fractional (iterative-root) variants, cross-checked against brute
force.

For f(x) = 2x^2 - 1 the n-th iterate is

    f^n(x) = ((x + sqrt(x^2-1))^(2^n) + (x - sqrt(x^2-1))^(2^n)) / 2

where the square root is taken as the principal complex root when
x^2 < 1. The two bases are then complex conjugates on the unit circle,
so repeated squaring keeps the pair exactly conjugate and the sum
exactly real. The same iterate has the trigonometric form
cos(2^n arccos t) on [-1, 1].

A fractional iterate (a map phi with phi^n = f) follows by replacing
the exponent 2^n with 2^(1/n); only the real branch (x >= 1, both bases
positive) is implemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, ImaginaryResidueError, ParameterError, RangeError
from .maps import MapDescriptor, iterate

MAX_ITERATIONS = 30  # keeps 2^n exact and the squaring cascade bounded


def effectively_real(z: complex, rel_tol: float = 1e-9) -> bool:
    """True when the imaginary part is negligible next to the real part."""
    return abs(z.imag) < rel_tol * max(1.0, abs(z.real))


@dataclass(frozen=True)
class HerschelConstant:
    """C = x + sqrt(x^2 - 1), the larger characteristic root; its product
    with the conjugate root x - sqrt(x^2 - 1) is exactly 1."""

    value: complex


def _characteristic_roots(x: float) -> tuple[complex, complex]:
    if x * x >= 1.0:
        s = math.sqrt(x * x - 1.0)
        return complex(x + s, 0.0), complex(x - s, 0.0)
    s = math.sqrt(1.0 - x * x)
    return complex(x, s), complex(x, -s)


def herschel_constant(x: float) -> HerschelConstant:
    """x + sqrt(x^2 - 1) with the principal complex root when x^2 < 1."""
    if not math.isfinite(x):
        raise DomainError(f"need a finite argument, got {x!r}")
    return HerschelConstant(_characteristic_roots(x)[0])


def _check_n(n: int, minimum: int = 0) -> int:
    if n != int(n) or n < minimum:
        raise ParameterError(f"iteration count must be an integer >= {minimum}, got {n!r}")
    if n > MAX_ITERATIONS:
        raise RangeError(f"iteration count {n} exceeds the cap of {MAX_ITERATIONS}")
    return int(n)


def herschel_iterate(x: float, n: int) -> float:
    """n-th iterate of 2x^2 - 1 via the characteristic-root power form.

    C^(2^n) is produced by n complex squarings (never polar
    exponentiation), with the final halving folded into the last
    squaring so the result overflows only when the iterate itself
    leaves binary64 range.
    """
    n = _check_n(n)
    if not math.isfinite(x):
        raise DomainError(f"need a finite argument, got {x!r}")
    c, cm = _characteristic_roots(x)
    if n == 0:
        v = (c + cm) / 2.0
    else:
        overflow = False
        for _ in range(n - 1):
            c, cm = c * c, cm * cm
            if not (math.isfinite(c.real) and math.isfinite(c.imag)
                    and math.isfinite(cm.real) and math.isfinite(cm.imag)):
                overflow = True
                break
        if not overflow:
            v = (0.5 * c) * c + (0.5 * cm) * cm
            overflow = not (math.isfinite(v.real) and math.isfinite(v.imag))
        if overflow:
            # even powers of a real root with |root| > 1 diverge to +inf
            return math.inf
    if abs(v.imag) > 1e-6 * max(1.0, abs(v.real)):
        raise ImaginaryResidueError(f"imaginary residue {v.imag!r} at x={x!r}, n={n}")
    return v.real


def boole_iterate(t: float, n: int) -> float:
    """n-th iterate of 2x^2 - 1 in trigonometric form: cos(2^n arccos t)."""
    n = _check_n(n)
    if math.isnan(t) or abs(t) > 1.0 + 1e-12:
        raise DomainError(f"need t in [-1, 1], got {t!r}")
    t = min(1.0, max(-1.0, t))
    return math.cos(2.0**n * math.acos(t))


def _hyperbola_params(e: float, a: float) -> float:
    e2 = e * e
    if not (math.isfinite(e2) and math.isfinite(a)) or a <= 0.0:
        raise ParameterError(f"need finite e^2 and positive a, got e={e!r}, a={a!r}")
    if abs(e2 - 1.0) <= 1e-9 or abs(e2 - 2.0) <= 1e-9:
        raise ParameterError(f"e^2 = {e2!r} too close to 1 or 2")
    return e2


def _hyperbola_closed_form(e2: float, a: float, x: float, power: float) -> float:
    coeff = (e2 - 1.0) / (e2 - 2.0)
    try:
        rad = power * x * x - coeff * (power - 1.0) * a * a
    except OverflowError:
        rad = math.nan
    if math.isnan(rad) and (math.isinf(power) or abs(power) > 1e300):
        # re-associate: rad = power*(x^2 - coeff*a^2) + coeff*a^2
        lead = x * x - coeff * a * a
        rad = math.copysign(math.inf, lead) if lead != 0.0 else coeff * a * a
    if rad < 0.0:
        scale = abs(power * x * x) + abs(coeff * (power - 1.0) * a * a)
        if math.isfinite(scale) and rad >= -1e-12 * max(1.0, scale):
            rad = 0.0
        else:
            raise DomainError(f"radicand {rad!r} negative at x={x!r}")
    return math.sqrt(rad)


def hyperbola_iterate(e: float, a: float, x: float, n: int) -> float:
    """n-th iterate of sqrt((1-e^2)(a^2-x^2)):

        f^n(x) = sqrt((e^2-1)^n x^2 - (e^2-1)/(e^2-2) ((e^2-1)^n - 1) a^2)
    """
    n = _check_n(n)
    e2 = _hyperbola_params(e, a)
    try:
        power = (e2 - 1.0) ** n
    except OverflowError:
        power = math.inf
    return _hyperbola_closed_form(e2, a, x, power)


def fractional_iterate_quadratic(x: float, n: int) -> float:
    """The 1/n-th iterate of 2x^2 - 1 on the real branch x >= 1.

    Exponent 2^(1/n) applied to both (positive real) characteristic
    roots; n-fold self-composition reproduces one application of the map.
    """
    if n != int(n) or n < 1:
        raise ParameterError(f"root order must be a positive integer, got {n!r}")
    if math.isnan(x) or x < 1.0 - 1e-12:
        raise DomainError(f"real fractional branch needs x >= 1, got {x!r}")
    x = max(x, 1.0)
    try:
        s = math.sqrt(x * x - 1.0)
        expo = 2.0 ** (1.0 / int(n))
        return 0.5 * ((x + s) ** expo + (x - s) ** expo)
    except OverflowError:
        return math.inf


def fractional_iterate_hyperbola(e: float, a: float, x: float, n: int) -> float:
    """The 1/n-th iterate of the hyperbola family; needs e^2 > 1 so that
    (e^2-1)^(1/n) has a real principal value."""
    if n != int(n) or n < 1:
        raise ParameterError(f"root order must be a positive integer, got {n!r}")
    e2 = _hyperbola_params(e, a)
    if e2 <= 1.0:
        raise ParameterError(f"fractional exponent needs e^2 > 1, got e^2 = {e2!r}")
    try:
        power = (e2 - 1.0) ** (1.0 / int(n))
    except OverflowError:
        power = math.inf
    return _hyperbola_closed_form(e2, a, x, power)


@dataclass(frozen=True)
class CrosscheckReport:
    """Worst disagreement between brute-force iteration and a closed form."""

    max_deviation: float
    argmax_x: float
    argmax_n: int
    samples: int
    n_max: int


def _scaled_deviation(u: float, v: float) -> float:
    """|u - v| relative to max(1, |u|, |v|).

    For values bounded by 1 this is the plain absolute deviation; for
    diverging iterates it degrades gracefully to a relative error, and
    two infinities of the same sign count as exact agreement.
    """
    if math.isinf(u) and math.isinf(v) and (u > 0.0) == (v > 0.0):
        return 0.0
    if math.isnan(u) or math.isnan(v):
        return math.inf
    d = abs(u - v)
    if math.isinf(d):
        return math.inf
    return d / max(1.0, abs(u), abs(v))


def crosscheck_closed_form(
    m: MapDescriptor,
    formula: Callable[[float, int], float],
    lo: float,
    hi: float,
    n_max: int,
    samples: int,
) -> CrosscheckReport:
    """Max deviation between iterate(m, x, n) and formula(x, n) over an
    inclusive sample grid of [lo, hi] and n = 0..n_max."""
    n_max = _check_n(n_max)
    if samples < 2:
        raise ParameterError(f"need at least 2 samples, got {samples!r}")
    worst, arg_x, arg_n = -1.0, lo, 0
    for i in range(samples):
        x = lo + (hi - lo) * i / (samples - 1)
        for n in range(n_max + 1):
            try:
                brute = iterate(m, x, n)
                closed = formula(x, n)
            except DomainError as exc:
                raise DomainError(f"crosscheck failed at x={x!r}, n={n}: {exc}") from exc
            d = _scaled_deviation(brute, closed)
            if d > worst:
                worst, arg_x, arg_n = d, x, n
    return CrosscheckReport(worst, arg_x, arg_n, samples, n_max)
