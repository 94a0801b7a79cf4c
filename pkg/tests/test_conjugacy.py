import math
import random

import pytest

from intervaldyn import (Affine, AlphaArcsin, Conflict, Cosine, DomainError,
                         HalfTent, Logistic, ParameterError, Power, Quadratic,
                         Reflect, Tent, UlamArcsin, affine_map, apply_homeo,
                         conjugate_map, eval_map, herschel_relation_residual,
                         identity_homeo, identity_map, iterate,
                         mobius_involution, orbit_consistency,
                         periodicity_order, propagate_partial_conjugacy,
                         reflect_map, verify_conjugacy, verify_semiconjugacy)
from intervaldyn.homeos import PiecewiseLinearHomeo


def test_verify_conjugacy_logistic_tent():
    report = verify_conjugacy(Logistic(), Tent(), UlamArcsin(), 10**4)
    assert report.max_residual < 1e-12
    assert len(report.residuals) == 10**4
    assert report.max_residual == max(report.residuals)


def test_verify_conjugacy_logistic_halftent():
    report = verify_conjugacy(Logistic(), HalfTent(), AlphaArcsin(), 10**4)
    assert report.max_residual < 1e-12


def test_reflect_does_not_conjugate_tent_to_itself():
    report = verify_conjugacy(Tent(), Tent(), Reflect(), 10**3)
    assert report.max_residual > 0.1


def test_conjugate_map_examples():
    g = conjugate_map(Logistic(), AlphaArcsin())
    assert eval_map(g, 0.1) == pytest.approx(0.2, abs=1e-13)

    f = Tent()
    ident = conjugate_map(f, identity_homeo())
    for i in range(101):
        x = (i + 0.5) / 102
        assert eval_map(ident, x) == pytest.approx(eval_map(f, x), abs=1e-15)

    # the parabola on [-1, 1] turned upside down is the logistic parabola
    g = conjugate_map(Quadratic(), Affine(-0.5, 0.5))
    for i in range(1000):
        x = (i + 0.5) / 1000
        assert abs(eval_map(g, x) - eval_map(Logistic(), x)) < 1e-12


def test_conjugate_map_round_trip_property():
    cases = [
        (Logistic(), UlamArcsin()),
        (Logistic(), AlphaArcsin()),
        (Tent(), Power(2.0)),
    ]
    for f, h in cases:
        report = verify_conjugacy(f, conjugate_map(f, h), h, 10**3)
        assert report.max_residual < 1e-12


def test_verify_semiconjugacy_cosine_double_angle():
    doubling_line = affine_map(2.0, 0.0, 0.0, 10.0)
    report = verify_semiconjugacy(Quadratic(), doubling_line, Cosine(), 0.0, 10.0, 10**4)
    assert report.max_residual < 1e-12


def test_verify_semiconjugacy_sin_squared():
    from intervaldyn import Doubling, SineSquared
    report = verify_semiconjugacy(Logistic(), Doubling(), SineSquared(), 0.0, 1.0, 10**4)
    assert report.max_residual < 1e-12


def test_verify_semiconjugacy_identity():
    report = verify_semiconjugacy(Tent(), Tent(), identity_map(), 0.0, 1.0, 10**3)
    assert report.max_residual == 0.0


def test_iterated_commutation():
    f, g, h = Logistic(), Tent(), UlamArcsin()
    worst = 0.0
    for i in range(1000):
        x = (i + 0.5) / 1000
        for n in range(11):
            worst = max(worst, abs(apply_homeo(h, iterate(f, x, n)) - iterate(g, apply_homeo(h, x), n)))
    assert worst < 1e-10


def test_periodicity_order_examples():
    assert periodicity_order(reflect_map(), 5, 10**3, 1e-12) == 2
    assert periodicity_order(identity_map(), 5, 10**3, 1e-12) == 1
    conj = conjugate_map(reflect_map(), Power(2.0))
    assert periodicity_order(conj, 5, 10**3, 1e-10) == 2
    assert periodicity_order(Logistic(), 6, 10**3, 1e-10) is None
    assert periodicity_order(Tent(), 6, 10**3, 1e-10) is None


def test_periodicity_order_preserved_by_conjugation():
    # order-p maps stay order-p in any coordinates (p = 1 and 2)
    for h in (Power(2.0), Power(0.5), PiecewiseLinearHomeo([(0.0, 0.0), (0.7, 0.2), (1.0, 1.0)])):
        assert periodicity_order(conjugate_map(identity_map(), h), 5, 200, 1e-9) == 1
        assert periodicity_order(conjugate_map(reflect_map(), h), 5, 200, 1e-9) == 2


def test_mobius_involution_examples():
    phi = mobius_involution(0.0, 0.0)
    for x in (0.0, 0.25, 1.0):
        assert apply_homeo(phi, x) == -x

    phi = mobius_involution(1.0, 2.0, lo=0.0, hi=3.0)
    assert apply_homeo(phi, 0.0) == -1.0
    worst = 0.0
    for i in range(1000):
        x = 3.0 * i / 999
        worst = max(worst, abs(apply_homeo(phi, apply_homeo(phi, x)) - x))
    assert worst < 1e-12

    with pytest.raises(ParameterError):
        mobius_involution(0.5, 2.0)


def test_herschel_relation_residual_examples():
    a, b = 1.0, 2.0
    phi = mobius_involution(a, b, lo=0.0, hi=3.0)
    assert herschel_relation_residual(lambda t: a + b * t, phi, 0.0, 3.0, 1000) < 1e-12

    neg = mobius_involution(0.0, 0.0)
    assert herschel_relation_residual(lambda t: 0.0, neg, -2.0, 2.0, 100) == 0.0

    assert herschel_relation_residual(lambda t: t, Reflect(), 0.0, 1.0, 100) > 0.5


def test_orbit_consistency_examples():
    f, g, h = Logistic(), Tent(), UlamArcsin()
    pairs = [(0.3, apply_homeo(h, 0.3)), (0.7, apply_homeo(h, 0.7))]
    assert orbit_consistency(f, g, pairs, 5, 1e-9) is None

    conflict = orbit_consistency(f, g, [(0.3, 0.3), (0.7, 0.6)], 1, 1e-9)
    assert isinstance(conflict, Conflict)
    assert conflict.step == 1
    assert conflict.image_gap == pytest.approx(0.2, abs=1e-12)

    assert orbit_consistency(f, g, [(0.3, 0.9)], 5, 1e-9) is None  # single pair


def test_propagate_identity_stays_on_diagonal():
    table = propagate_partial_conjugacy(
        Tent(), Tent(), 0.01, 0.02, identity_homeo(), 5, 21, 1e-6)
    assert not isinstance(table, Conflict)
    assert all(y == x for x, y in table)
    assert table == sorted(table)


def test_propagate_true_seed_stays_on_graph():
    h = UlamArcsin()
    table = propagate_partial_conjugacy(
        Logistic(), Tent(), 0.1, 0.11, h, 6, 41, 1e-3)
    assert not isinstance(table, Conflict)
    worst = max(abs(y - apply_homeo(h, x)) for x, y in table)
    assert worst < 1e-9


def test_propagate_wrong_seed_conflicts():
    outcome = propagate_partial_conjugacy(
        Logistic(), Tent(), 0.1, 0.11, identity_homeo(), 6, 41, 1e-3)
    assert isinstance(outcome, Conflict)
    assert outcome.image_gap > 0.01


def test_mobius_family_involution_property():
    rng = random.Random(7)
    count = 0
    while count < 20:
        a, b = rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)
        if abs(a * b - 1.0) <= 0.1:
            continue
        count += 1
        pole = -1.0 / b if b != 0.0 else None
        phi = None
        # any pole-free interval works; shift if the pole lands in [0, 3]
        if pole is not None and 0.0 <= pole <= 3.0:
            phi = mobius_involution(a, b, lo=pole + 0.1, hi=pole + 3.1)
            grid_lo = pole + 0.1
        else:
            phi = mobius_involution(a, b, lo=0.0, hi=3.0)
            grid_lo = 0.0
        worst = 0.0
        for i in range(200):
            x = grid_lo + 3.0 * i / 199
            worst = max(worst, abs(apply_homeo(phi, apply_homeo(phi, x)) - x))
        assert worst < 1e-12


def test_conjugacy_report_argmax_consistency():
    report = verify_conjugacy(Tent(), Tent(), Reflect(), 100)
    idx = report.residuals.index(report.max_residual)
    assert report.grid[idx] == report.argmax
    assert all(r >= 0.0 and math.isfinite(r) for r in report.residuals)


def test_semiconjugacy_domain_error_reports_point():
    with pytest.raises(DomainError):
        verify_semiconjugacy(Logistic(), Tent(), identity_map(), 0.0, 2.0, 100)
