"""Acceptance suite: every contract bound at its stated tolerance.

Each criterion prints one PASS/FAIL line (written past pytest's capture
so the lines always appear in the run log) and then asserts.
"""

import json
import math
import random
import sys
import time

import pytest

from intervaldyn import (Affine, AlphaArcsin, CompositionH, Conflict, Cosine,
                         Doubling, FixedPointWord, HalfTent, Hyperbola,
                         Logistic, Power, Quadratic, SineSquared, Tent,
                         UlamArcsin, affine_map, apply_homeo, arcsine_cdf,
                         boole_iterate, cobweb_path, conjugate_map,
                         crosscheck_closed_form, doubling_collapse, eval_map,
                         fractional_iterate_hyperbola,
                         fractional_iterate_quadratic, herschel_iterate,
                         herschel_relation_residual, hyperbola_iterate,
                         identity_map, iterate, ks_distance, logistic_sequence,
                         mobius_involution, orbit_consistency,
                         periodicity_order, propagate_partial_conjugacy,
                         reflect_map, square_distribution, transform_to,
                         uniformize, verify_conjugacy, verify_semiconjugacy,
                         zero_preimage_set)
from intervaldyn.chaos_rng import DEFAULT_SEED
from intervaldyn.cli import main
from intervaldyn.homeos import PiecewiseLinearHomeo

SQRT3 = math.sqrt(3.0)


def report(name: str, ok: bool, detail: str):
    line = f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line, file=sys.__stdout__)
    sys.__stdout__.flush()
    assert ok, line


@pytest.fixture(scope="module")
def million_orbit():
    return logistic_sequence(DEFAULT_SEED, 10**6)


def test_c01_central_conjugacy():
    started = time.perf_counter()
    r = verify_conjugacy(Logistic(), Tent(), UlamArcsin(), 10**4)
    elapsed = time.perf_counter() - started
    ok = r.max_residual < 1e-12 and elapsed < 0.1
    report("C01 central conjugacy", ok,
           f"max residual {r.max_residual:.3e} < 1e-12, runtime {elapsed * 1e3:.1f} ms < 100 ms")


def test_c02_alpha_chain():
    g = conjugate_map(Logistic(), AlphaArcsin())
    ht = HalfTent()
    worst_map = 0.0
    for i in range(10**4):
        x = 0.5 * (i + 0.5) / 10**4
        worst_map = max(worst_map, abs(eval_map(g, x) - eval_map(ht, x)))

    comp = CompositionH(Affine(2.0, 0.0), AlphaArcsin())
    ulam = UlamArcsin()
    worst_h = 0.0
    for i in range(10**4 + 1):
        x = i / 10**4
        worst_h = max(worst_h, abs(apply_homeo(comp, x) - apply_homeo(ulam, x)))
    ok = worst_map < 1e-12 and worst_h < 1e-15
    report("C02 half-scale chain", ok,
           f"conjugate-vs-halftent {worst_map:.3e} < 1e-12, doubled-alpha-vs-ulam {worst_h:.3e} < 1e-15")


def test_c03_iterated_commutation():
    f, g, h = Logistic(), Tent(), UlamArcsin()
    worst = 0.0
    for i in range(10**3):
        x = (i + 0.5) / 10**3
        hx = apply_homeo(h, x)
        for n in range(11):
            worst = max(worst, abs(apply_homeo(h, iterate(f, x, n)) - iterate(g, hx, n)))
    ok = worst < 1e-10
    report("C03 iterated commutation", ok, f"max residual {worst:.3e} < 1e-10, n <= 10")


def test_c04_closed_forms():
    boole = crosscheck_closed_form(Quadratic(), boole_iterate, -1.0, 1.0, 10, 10**3)
    herschel = crosscheck_closed_form(Quadratic(), herschel_iterate, -1.0, 3.0, 10, 10**3)
    worst_hb = 0.0
    for i in range(10**3):
        t = -1.0 + 2.0 * i / 999
        for n in range(11):
            worst_hb = max(worst_hb, abs(herschel_iterate(t, n) - boole_iterate(t, n)))
    formula = lambda x, n: hyperbola_iterate(SQRT3, 1.0, x, n)
    hyper = crosscheck_closed_form(Hyperbola(e=SQRT3, a=1.0), formula, 2.0, 5.0, 4, 100)
    ok = (boole.max_deviation < 1e-9 and herschel.max_deviation < 1e-6
          and worst_hb < 1e-9 and hyper.max_deviation < 1e-9)
    report("C04 closed forms vs brute force", ok,
           f"boole {boole.max_deviation:.3e} < 1e-9, herschel {herschel.max_deviation:.3e} < 1e-6, "
           f"herschel-vs-boole {worst_hb:.3e} < 1e-9, hyperbola {hyper.max_deviation:.3e} < 1e-9")


def test_c05_fractional_iterates():
    worst_q = 0.0
    for n in (2, 3, 4):
        for i in range(200):
            x = 1.01 + (3.0 - 1.01) * i / 199
            y = x
            for _ in range(n):
                y = fractional_iterate_quadratic(y, n)
            worst_q = max(worst_q, abs(y - herschel_iterate(x, 1)))
    worst_h = 0.0
    for n in (2, 3, 4):
        for i in range(200):
            x = 2.0 + 3.0 * i / 199
            y = x
            for _ in range(n):
                y = fractional_iterate_hyperbola(SQRT3, 1.0, y, n)
            worst_h = max(worst_h, abs(y - hyperbola_iterate(SQRT3, 1.0, x, 1)))
    ok = worst_q < 1e-8 and worst_h < 1e-8
    report("C05 fractional iterates compose back", ok,
           f"quadratic {worst_q:.3e} < 1e-8, hyperbola {worst_h:.3e} < 1e-8, n in 2..4")


def test_c06_semiconjugacies():
    cos_leg = verify_semiconjugacy(Quadratic(), affine_map(2.0, 0.0, 0.0, 10.0),
                                   Cosine(), 0.0, 10.0, 10**4)
    sin_leg = verify_semiconjugacy(Logistic(), Doubling(), SineSquared(),
                                   0.0, 1.0, 10**4)
    ok = cos_leg.max_residual < 1e-12 and sin_leg.max_residual < 1e-12
    report("C06 semiconjugacies", ok,
           f"cosine double-angle {cos_leg.max_residual:.3e} < 1e-12, "
           f"sin^2 doubling-to-logistic {sin_leg.max_residual:.3e} < 1e-12")


def test_c07_mobius_family():
    rng = random.Random(7)
    pairs = []
    while len(pairs) < 20:
        a, b = rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)
        if abs(a * b - 1.0) > 0.1:
            pairs.append((a, b))
    worst_inv, worst_rel = 0.0, 0.0
    for a, b in pairs:
        pole = -1.0 / b if b != 0.0 else None
        lo = pole + 0.1 if pole is not None and 0.0 <= pole <= 3.0 else 0.0
        phi = mobius_involution(a, b, lo=lo, hi=lo + 3.0)
        for i in range(200):
            x = lo + 3.0 * i / 199
            worst_inv = max(worst_inv, abs(apply_homeo(phi, apply_homeo(phi, x)) - x))
        worst_rel = max(worst_rel, herschel_relation_residual(
            lambda t: a + b * t, phi, lo, lo + 3.0, 200))
    ok = worst_inv < 1e-12 and worst_rel < 1e-12
    report("C07 mobius involutions", ok,
           f"20 pairs, |ab-1| > 0.1: self-composition {worst_inv:.3e} < 1e-12, "
           f"functional relation {worst_rel:.3e} < 1e-12")


def test_c08_periodicity_orders():
    rng = random.Random(20250808)
    ok = periodicity_order(reflect_map(), 5, 10**3, 1e-10) == 2
    ok = ok and periodicity_order(identity_map(), 5, 10**3, 1e-10) == 1
    for trial in range(10):
        if trial % 2 == 0:
            h = Power(rng.uniform(0.4, 3.0))
        else:
            k = rng.randint(1, 3)
            xs = sorted(rng.uniform(0.05, 0.95) for _ in range(k))
            ys = sorted(rng.uniform(0.05, 0.95) for _ in range(k))
            h = PiecewiseLinearHomeo([(0.0, 0.0)] + list(zip(xs, ys)) + [(1.0, 1.0)])
        ok = ok and periodicity_order(conjugate_map(reflect_map(), h), 5, 10**3, 1e-10) == 2
    ok = ok and periodicity_order(Logistic(), 6, 10**3, 1e-10) is None
    ok = ok and periodicity_order(Tent(), 6, 10**3, 1e-10) is None
    report("C08 periodicity orders", ok,
           "reflect and 10 random conjugates have order 2, identity 1, logistic/tent none")


def test_c09_fold_obstruction():
    conflict = orbit_consistency(Logistic(), Tent(), [(0.3, 0.3), (0.7, 0.6)], 1, 1e-9)
    ok = isinstance(conflict, Conflict) and conflict.step == 1

    h = UlamArcsin()
    table = propagate_partial_conjugacy(Logistic(), Tent(), 0.1, 0.11, h, 6, 41, 1e-3)
    ok = ok and not isinstance(table, Conflict)
    worst = max(abs(y - apply_homeo(h, x)) for x, y in table) if ok else math.inf
    ok = ok and worst < 1e-9
    report("C09 fold obstruction and propagation", ok,
           f"(0.3, 0.7) conflict at step 1; true-seed table stays {worst:.3e} < 1e-9 off its graph")


def test_c10_cobweb_convergence():
    path = cobweb_path(Cosine(), 1.0, 200)
    lo, hi = 0.0, 1.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if math.cos(mid) - mid > 0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    gap = abs(path.limit - root) if path.converged else math.inf
    ok = path.converged and gap < 1e-9
    report("C10 cobweb convergence", ok,
           f"limit off the bisection root by {gap:.3e} < 1e-9")


def test_c11_ulam_density_criterion():
    ok = True
    for k in range(1, 11):
        pset = zero_preimage_set(Tent(), k)
        ok = ok and len(pset.points) == 2 ** (k - 1) + 1
        ok = ok and pset.largest_gap == 2.0 ** (1 - k)
    from intervaldyn import PiecewiseLinear, Unimodal
    truncated = Unimodal(v=0.5,
                         left=PiecewiseLinear([(0.0, 0.0), (0.5, 0.8)]),
                         right=PiecewiseLinear([(0.5, 0.8), (1.0, 0.0)]))
    for k in range(1, 7):
        ok = ok and zero_preimage_set(truncated, k).largest_gap == 1.0
    report("C11 zero-preimage density", ok,
           "tent: exactly 2^(k-1)+1 points, gap exactly 2^(1-k), k <= 10; "
           "height-0.8 tent: gap 1 at every depth <= 6")


def test_c12_distribution_checks(million_orbit):
    d_raw = ks_distance(million_orbit.values, arcsine_cdf)
    uni = uniformize(million_orbit)
    d_uni = ks_distance(uni, lambda x: x)
    squared = transform_to(uni, square_distribution())
    d_sq = ks_distance(squared, lambda x: x * x)
    ok = d_raw < 0.01 and d_uni < 0.01 and d_sq < 0.01
    report("C12 distribution checks", ok,
           f"10^6 steps from {DEFAULT_SEED}: arcsine {d_raw:.4f}, uniform {d_uni:.4f}, "
           f"F(x)=x^2 {d_sq:.4f}, all < 0.01")


def test_c13_finite_precision_collapse():
    started = time.perf_counter()
    failures = 0
    worst = 0
    for value in range(2**16):
        steps = doubling_collapse(FixedPointWord(16, value), 16)
        if steps is None:
            failures += 1
        else:
            worst = max(worst, steps)
    elapsed = time.perf_counter() - started
    ok = failures == 0 and worst <= 16 and elapsed < 1.0
    report("C13 finite-precision collapse", ok,
           f"all 65536 words collapse within {worst} <= 16 steps, "
           f"{failures} failures, {elapsed:.2f} s < 1 s")


def test_c14_sensitivity():
    from intervaldyn import sensitivity_report
    seps = sensitivity_report(Logistic(), 0.123456789, 1e-9, 40)
    first_escape = next((k for k, s in enumerate(seps) if s > 0.1), None)
    ok = first_escape is not None and first_escape <= 40
    report("C14 sensitive dependence", ok,
           f"orbits from 0.123456789 and +1e-9 separate beyond 0.1 at step {first_escape} <= 40")


_CLI_DETERMINISM_CASES = [
    ["iterate", "--map", "logistic", "--x0", "0.2", "--n", "3"],
    ["orbit", "--map", "tent", "--x0", "0.2", "--n", "8"],
    ["fixed-points", "--map", "logistic", "--lo", "0.01", "--hi", "0.99"],
    ["closed-form", "check", "--formula", "boole", "--lo", "-1", "--hi", "1",
     "--n-max", "6", "--samples", "100"],
    ["conjugacy", "verify", "--f", "logistic", "--g", "tent", "--h", "ulam",
     "--samples", "500"],
    ["conjugacy", "semiverify", "--f", "quadratic", "--g", "pwl:0,0;10,20",
     "--h", "cosine", "--lo", "0", "--hi", "10", "--samples", "500"],
    ["conjugacy", "order", "--map", "pwl:0,1;1,0"],
    ["conjugacy", "propagate", "--f", "logistic", "--g", "tent", "--h", "ulam",
     "--lo", "0.1", "--hi", "0.11", "--depth", "4", "--grid", "11"],
    ["cobweb", "--map", "cosine", "--x0", "1.0", "--steps", "50"],
    ["density", "--map", "tent", "--depth", "6"],
    ["rng", "generate", "--n", "50", "--seed", "0.123456789"],
    ["rng", "ks", "--n", "2000", "--cdf", "uniform", "--seed", "0.123456789"],
    ["rng", "collapse", "--bits", "10", "--exhaustive"],
    ["sensitivity", "--map", "logistic", "--x0", "0.123456789", "--delta", "1e-9",
     "--n", "20"],
]


def test_c15_cli_contract(capsys):
    def run_once(argv):
        code = main(argv)
        captured = capsys.readouterr()
        return code, captured.out

    ok = True
    for argv in _CLI_DETERMINISM_CASES:
        for fmt in ("json", "csv"):
            full = argv + ["--format", fmt]
            code1, out1 = run_once(full)
            code2, out2 = run_once(full)
            ok = ok and code1 == code2 and out1 == out2 and out1 != ""
    code1, svg1 = run_once(_CLI_DETERMINISM_CASES[8] + ["--format", "svg"])
    code2, svg2 = run_once(_CLI_DETERMINISM_CASES[8] + ["--format", "svg"])
    ok = ok and svg1 == svg2 and code1 == code2 == 0

    # exit-code contract
    code_ok, _ = run_once(["conjugacy", "verify", "--f", "logistic", "--g", "tent",
                           "--h", "ulam", "--samples", "100"])
    code_tol, _ = run_once(["conjugacy", "verify", "--f", "tent", "--g", "tent",
                            "--h", "reflect", "--samples", "100"])
    code_usage = main(["iterate", "--map", "nosuchmap", "--x0", "0.1", "--n", "1"])
    capsys.readouterr()
    code_domain = main(["iterate", "--map", "logistic", "--x0", "2.0", "--n", "1"])
    capsys.readouterr()
    codes = (code_ok, code_tol, code_usage, code_domain)
    ok = ok and codes == (0, 1, 2, 3)
    report("C15 CLI determinism and exit codes", ok,
           f"byte-identical reruns for all 14 subcommands (json+csv, cobweb svg); "
           f"exit codes {codes} == (0, 1, 2, 3)")
