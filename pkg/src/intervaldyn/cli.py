"""Command-line front end.

Every library capability is exposed as a subcommand with deterministic
machine-readable output: identical invocations produce byte-identical
JSON/CSV (floats are printed with 17 significant digits, lowercase
exponent, so text round-trips losslessly through binary64).

Exit codes: 0 success; 1 a verification subcommand exceeded its
tolerance (or a propagation found a conflict); 2 usage error; 3 domain
or parameter error.

Map specs: logistic, tent, halftent, quadratic, doubling, cosine,
sinsq, hyperbola:e=<v>,a=<v>, verhulst:m=<v>,n=<v>,
pwl:<x0>,<y0>;<x1>,<y1>;..., conj:<base>|<homeo>.
Homeo specs: ulam, alpha, affine:p=<v>,q=<v>, power:g=<v>,
mobius:a=<v>,b=<v>, reflect, pwlh:<x0>,<y0>;..., and compositions
written "outer o inner".

The environment variable CONJUGATE_SEED overrides the default ergodic
seed of the rng subcommands; an explicit --seed beats both.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import analysis, chaos_rng, closed_form, conjugacy, maps
from .errors import (DomainError, EmptySampleError, ImaginaryResidueError,
                     IntervalDynError, ParameterError, RangeError, UsageError)
from .homeos import (Affine, AlphaArcsin, CompositionH, Homeomorphism, Mobius,
                     PiecewiseLinearHomeo, Power, Reflect, UlamArcsin)
from .render import cobweb_svg

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

SEED_ENV_VAR = "CONJUGATE_SEED"


# --- deterministic text output ----------------------------------------------


def fmt_float(v: float) -> str:
    """17 significant digits, lowercase exponent: lossless in binary64."""
    if v != v:
        return "NaN"
    if v == float("inf"):
        return "Infinity"
    if v == float("-inf"):
        return "-Infinity"
    return format(v, ".17g")


def to_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt_float(value)
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{escaped}"'
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{inner}"{k}": {to_json(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{to_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _csv_cell(v) -> str:
    if isinstance(v, float):
        s = fmt_float(v)
    else:
        s = str(v)
    if any(c in s for c in ',"\n'):
        s = '"' + s.replace('"', '""') + '"'
    return s


def to_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


# --- map and homeo spec grammars --------------------------------------------


def _parse_kv(args: str, keys: list[str], spec: str) -> dict[str, float]:
    out: dict[str, float] = {}
    if not args:
        raise UsageError(f"'{spec}' needs parameters {','.join(keys)}")
    for part in args.split(","):
        k, sep, v = part.partition("=")
        if not sep or k not in keys:
            raise UsageError(f"bad parameter '{part}' in '{spec}'")
        try:
            out[k] = float(v)
        except ValueError:
            raise UsageError(f"bad number '{v}' in '{spec}'") from None
    missing = [k for k in keys if k not in out]
    if missing:
        raise UsageError(f"'{spec}' is missing parameters {','.join(missing)}")
    return out


def _parse_knots(args: str, spec: str) -> list[tuple[float, float]]:
    knots = []
    for piece in args.split(";"):
        xy = piece.split(",")
        if len(xy) != 2:
            raise UsageError(f"bad knot '{piece}' in '{spec}'")
        try:
            knots.append((float(xy[0]), float(xy[1])))
        except ValueError:
            raise UsageError(f"bad knot '{piece}' in '{spec}'") from None
    return knots


def parse_map_spec(spec: str) -> maps.MapDescriptor:
    s = spec.strip()
    if s.lower().startswith("conj:"):
        base_str, sep, homeo_str = s[5:].partition("|")
        if not sep:
            raise UsageError(f"'{spec}' needs the form conj:<base>|<homeo>")
        return maps.Conjugated(parse_map_spec(base_str), parse_homeo_spec(homeo_str))
    name, _, args = s.partition(":")
    name = name.strip().lower()
    simple = {
        "logistic": maps.Logistic,
        "tent": maps.Tent,
        "halftent": maps.HalfTent,
        "quadratic": maps.Quadratic,
        "doubling": maps.Doubling,
        "cosine": maps.Cosine,
        "sinsq": maps.SineSquared,
    }
    if name in simple:
        if args:
            raise UsageError(f"map '{name}' takes no parameters")
        return simple[name]()
    if name == "hyperbola":
        kv = _parse_kv(args, ["e", "a"], spec)
        return maps.Hyperbola(e=kv["e"], a=kv["a"])
    if name == "verhulst":
        kv = _parse_kv(args, ["m", "n"], spec)
        return maps.Verhulst(m=kv["m"], n=kv["n"])
    if name == "pwl":
        return maps.PiecewiseLinear(_parse_knots(args, spec))
    raise UsageError(f"unknown map '{spec}'")


def _parse_atomic_homeo(spec: str) -> Homeomorphism:
    s = spec.strip()
    name, _, args = s.partition(":")
    name = name.strip().lower()
    if name == "ulam":
        return UlamArcsin()
    if name == "alpha":
        return AlphaArcsin()
    if name == "reflect":
        return Reflect()
    if name == "affine":
        kv = _parse_kv(args, ["p", "q"], spec)
        return Affine(p=kv["p"], q=kv["q"])
    if name == "power":
        kv = _parse_kv(args, ["g"], spec)
        return Power(gamma=kv["g"])
    if name == "mobius":
        kv = _parse_kv(args, ["a", "b"], spec)
        return Mobius(a=kv["a"], b=kv["b"])
    if name == "pwlh":
        return PiecewiseLinearHomeo(_parse_knots(args, spec))
    raise UsageError(f"unknown coordinate change '{spec}'")


def parse_homeo_spec(spec: str) -> Homeomorphism:
    parts = re.split(r"\s+o\s+", spec.strip())
    h = _parse_atomic_homeo(parts[-1])
    for outer in reversed(parts[:-1]):
        h = CompositionH(outer=_parse_atomic_homeo(outer), inner=h)
    return h


# --- configuration -----------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """A fully parsed invocation: one subcommand plus its parameters."""

    command: str
    params: dict = field(default_factory=dict)
    fmt: str = "json"
    output: Optional[str] = None
    timing: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # one-line diagnostics, no hard exit
        raise UsageError(message)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    common.add_argument("--output", default=None, help="output path (default: stdout)")
    common.add_argument("--timing", action="store_true", help="include measured elapsed_ms")

    p = _Parser(prog="intervaldyn", description="one-dimensional interval-map dynamics toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("iterate", parents=[common], help="n-fold map application")
    sp.add_argument("--map", required=True)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("orbit", parents=[common], help="iterate sequence")
    sp.add_argument("--map", required=True)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("fixed-points", parents=[common], help="solutions of f(x) = x")
    sp.add_argument("--map", required=True)
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-12)

    sp = sub.add_parser("closed-form", help="closed-form iterate checks")
    cf = sp.add_subparsers(dest="subcommand", required=True)
    spc = cf.add_parser("check", parents=[common],
                        help="cross-check a closed form against brute-force iteration")
    spc.add_argument("--formula", choices=["boole", "herschel", "hyperbola"], required=True)
    spc.add_argument("--lo", type=float, required=True)
    spc.add_argument("--hi", type=float, required=True)
    spc.add_argument("--n-max", type=int, default=10)
    spc.add_argument("--samples", type=int, default=1000)
    spc.add_argument("--e", type=float, default=None, help="hyperbola eccentricity")
    spc.add_argument("--a", type=float, default=None, help="hyperbola scale")
    spc.add_argument("--tol", type=float, default=None,
                     help="default 1e-9 (trig forms) or 1e-6 (power form)")

    sp = sub.add_parser("conjugacy", help="conjugacy verification")
    cj = sp.add_subparsers(dest="subcommand", required=True)
    spc = cj.add_parser("verify", parents=[common], help="check h(f(x)) = g(h(x))")
    spc.add_argument("--f", required=True)
    spc.add_argument("--g", required=True)
    spc.add_argument("--h", required=True, help="homeo spec")
    spc.add_argument("--samples", type=int, default=10000)
    spc.add_argument("--tol", type=float, default=1e-12)
    spc = cj.add_parser("semiverify", parents=[common], help="check f(h(x)) = h(g(x))")
    spc.add_argument("--f", required=True)
    spc.add_argument("--g", required=True)
    spc.add_argument("--h", required=True, help="map spec (need not be invertible)")
    spc.add_argument("--lo", type=float, required=True)
    spc.add_argument("--hi", type=float, required=True)
    spc.add_argument("--samples", type=int, default=10000)
    spc.add_argument("--tol", type=float, default=1e-12)
    spc = cj.add_parser("order", parents=[common], help="smallest p with f^p = identity")
    spc.add_argument("--map", required=True)
    spc.add_argument("--p-max", type=int, default=6)
    spc.add_argument("--samples", type=int, default=1000)
    spc.add_argument("--tol", type=float, default=1e-10)
    spc = cj.add_parser("propagate", parents=[common],
                        help="extend a seed coordinate change along orbits")
    spc.add_argument("--f", required=True)
    spc.add_argument("--g", required=True)
    spc.add_argument("--h", required=True, help="seed homeo spec")
    spc.add_argument("--lo", type=float, required=True)
    spc.add_argument("--hi", type=float, required=True)
    spc.add_argument("--depth", type=int, default=6)
    spc.add_argument("--grid", type=int, default=41)
    spc.add_argument("--tol", type=float, default=1e-3)

    sp = sub.add_parser("cobweb", parents=[common], help="cobweb diagram data or SVG")
    sp.add_argument("--map", required=True)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)

    sp = sub.add_parser("density", parents=[common], help="zero-preimage density estimate")
    sp.add_argument("--map", required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--threshold", type=float, default=0.01)

    sp = sub.add_parser("rng", help="chaotic random-number pipeline")
    rg = sp.add_subparsers(dest="subcommand", required=True)
    spc = rg.add_parser("generate", parents=[common], help="generate a sample")
    spc.add_argument("--n", type=int, required=True)
    spc.add_argument("--seed", type=float, default=None)
    spc.add_argument("--stage", choices=["raw", "uniform", "square"], default="raw")
    spc = rg.add_parser("ks", parents=[common], help="empirical-CDF discrepancy")
    spc.add_argument("--n", type=int, required=True)
    spc.add_argument("--seed", type=float, default=None)
    spc.add_argument("--cdf", choices=["arcsine", "uniform", "square"], required=True)
    spc.add_argument("--tol", type=float, default=None,
                     help="when given, exceeding it exits with code 1")
    spc = rg.add_parser("collapse", parents=[common], help="fixed-point doubling collapse")
    spc.add_argument("--bits", type=int, required=True)
    spc.add_argument("--value", type=int, default=None)
    spc.add_argument("--exhaustive", action="store_true")
    spc.add_argument("--max-steps", type=int, default=None)

    sp = sub.add_parser("sensitivity", parents=[common], help="orbit separation report")
    sp.add_argument("--map", required=True)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)

    return p


def parse_args(argv: list[str]) -> RunConfig:
    """Validate argv into a RunConfig; raises UsageError on bad input."""
    ns = _build_parser().parse_args(argv)
    command = ns.command
    if getattr(ns, "subcommand", None):
        command = f"{command} {ns.subcommand}"
    params = {k: v for k, v in vars(ns).items()
              if k not in ("command", "subcommand", "format", "output", "timing")}
    if ns.format == "svg" and command != "cobweb":
        raise UsageError("svg output is only available for the cobweb subcommand")
    return RunConfig(command=command, params=params, fmt=ns.format,
                     output=ns.output, timing=ns.timing)


# --- subcommand implementations ----------------------------------------------


def _default_seed() -> float:
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"bad {SEED_ENV_VAR} value '{env}'") from None
    return chaos_rng.DEFAULT_SEED


def _run_iterate(p: dict, fmt: str):
    m = parse_map_spec(p["map"])
    value = maps.iterate(m, p["x0"], p["n"])
    inputs = {"map": m.describe(), "x0": p["x0"], "n": p["n"]}
    if fmt == "csv":
        return EXIT_OK, inputs, None, to_csv(["x"], [[value]])
    return EXIT_OK, inputs, value, None


def _run_orbit(p: dict, fmt: str):
    m = parse_map_spec(p["map"])
    o = maps.orbit(m, p["x0"], p["n"])
    inputs = {"map": m.describe(), "x0": p["x0"], "n": p["n"]}
    if fmt == "csv":
        return EXIT_OK, inputs, None, to_csv(["k", "x"], [[k, v] for k, v in enumerate(o.values)])
    return EXIT_OK, inputs, {"seed": o.seed, "values": list(o.values)}, None


def _run_fixed_points(p: dict, fmt: str):
    m = parse_map_spec(p["map"])
    roots = maps.fixed_points(m, p["lo"], p["hi"], p["tol"])
    inputs = {"map": m.describe(), "lo": p["lo"], "hi": p["hi"], "tol": p["tol"]}
    if fmt == "csv":
        return EXIT_OK, inputs, None, to_csv(["x"], [[r] for r in roots])
    return EXIT_OK, inputs, {"count": len(roots), "roots": roots}, None


_FORMULA_DEFAULT_TOL = {"boole": 1e-9, "herschel": 1e-6, "hyperbola": 1e-9}


def _run_closed_form_check(p: dict, fmt: str):
    formula_name = p["formula"]
    tol = p["tol"] if p["tol"] is not None else _FORMULA_DEFAULT_TOL[formula_name]
    if formula_name == "boole":
        m, formula = maps.Quadratic(), closed_form.boole_iterate
    elif formula_name == "herschel":
        m, formula = maps.Quadratic(), closed_form.herschel_iterate
    else:
        if p["e"] is None or p["a"] is None:
            raise UsageError("--formula hyperbola needs --e and --a")
        e, a = p["e"], p["a"]
        m = maps.Hyperbola(e=e, a=a)
        formula = lambda x, n: closed_form.hyperbola_iterate(e, a, x, n)
    report = closed_form.crosscheck_closed_form(m, formula, p["lo"], p["hi"],
                                                p["n_max"], p["samples"])
    code = EXIT_OK if report.max_deviation < tol else EXIT_TOLERANCE
    inputs = {"formula": formula_name, "map": m.describe(), "lo": p["lo"], "hi": p["hi"],
              "n_max": p["n_max"], "samples": p["samples"], "tol": tol}
    result = {"max_deviation": report.max_deviation, "argmax_x": report.argmax_x,
              "argmax_n": report.argmax_n, "within_tolerance": code == EXIT_OK}
    if fmt == "csv":
        return code, inputs, None, to_csv(
            ["max_deviation", "argmax_x", "argmax_n"],
            [[report.max_deviation, report.argmax_x, report.argmax_n]])
    return code, inputs, result, None


def _run_conjugacy_verify(p: dict, fmt: str):
    f = parse_map_spec(p["f"])
    g = parse_map_spec(p["g"])
    h = parse_homeo_spec(p["h"])
    report = conjugacy.verify_conjugacy(f, g, h, p["samples"])
    code = EXIT_OK if report.max_residual < p["tol"] else EXIT_TOLERANCE
    inputs = {"f": f.describe(), "g": g.describe(), "h": h.describe(),
              "samples": p["samples"], "tol": p["tol"]}
    result = {"max_residual": report.max_residual, "argmax": report.argmax,
              "within_tolerance": code == EXIT_OK}
    if fmt == "csv":
        return code, inputs, None, to_csv(["max_residual", "argmax"],
                                          [[report.max_residual, report.argmax]])
    return code, inputs, result, None


def _run_conjugacy_semiverify(p: dict, fmt: str):
    f = parse_map_spec(p["f"])
    g = parse_map_spec(p["g"])
    h = parse_map_spec(p["h"])
    report = conjugacy.verify_semiconjugacy(f, g, h, p["lo"], p["hi"], p["samples"])
    code = EXIT_OK if report.max_residual < p["tol"] else EXIT_TOLERANCE
    inputs = {"f": f.describe(), "g": g.describe(), "h": h.describe(), "lo": p["lo"],
              "hi": p["hi"], "samples": p["samples"], "tol": p["tol"]}
    result = {"max_residual": report.max_residual, "argmax": report.argmax,
              "within_tolerance": code == EXIT_OK}
    if fmt == "csv":
        return code, inputs, None, to_csv(["max_residual", "argmax"],
                                          [[report.max_residual, report.argmax]])
    return code, inputs, result, None


def _run_conjugacy_order(p: dict, fmt: str):
    m = parse_map_spec(p["map"])
    order = conjugacy.periodicity_order(m, p["p_max"], p["samples"], p["tol"])
    inputs = {"map": m.describe(), "p_max": p["p_max"], "samples": p["samples"], "tol": p["tol"]}
    if fmt == "csv":
        return EXIT_OK, inputs, None, to_csv(["order"], [["" if order is None else order]])
    return EXIT_OK, inputs, {"order": order}, None


def _run_conjugacy_propagate(p: dict, fmt: str):
    f = parse_map_spec(p["f"])
    g = parse_map_spec(p["g"])
    h = parse_homeo_spec(p["h"])
    outcome = conjugacy.propagate_partial_conjugacy(
        f, g, p["lo"], p["hi"], h, p["depth"], p["grid"], p["tol"])
    inputs = {"f": f.describe(), "g": g.describe(), "h": h.describe(), "lo": p["lo"],
              "hi": p["hi"], "depth": p["depth"], "grid": p["grid"], "tol": p["tol"]}
    if isinstance(outcome, conjugacy.Conflict):
        result = {"status": "conflict", "left": outcome.left, "right": outcome.right,
                  "image_gap": outcome.image_gap}
        if fmt == "csv":
            return EXIT_TOLERANCE, inputs, None, to_csv(
                ["status", "left", "right", "image_gap"],
                [["conflict", outcome.left, outcome.right, outcome.image_gap]])
        return EXIT_TOLERANCE, inputs, result, None
    result = {"status": "consistent", "entries": len(outcome),
              "table": [[x, y] for x, y in outcome]}
    if fmt == "csv":
        return EXIT_OK, inputs, None, to_csv(["x", "y"], [[x, y] for x, y in outcome])
    return EXIT_OK, inputs, result, None


def _run_cobweb(p: dict, fmt: str):
    m = parse_map_spec(p["map"])
    path = analysis.cobweb_path(m, p["x0"], p["steps"])
    inputs = {"map": m.describe(), "x0": p["x0"], "steps": p["steps"]}
    if fmt == "svg":
        return EXIT_OK, inputs, None, cobweb_svg(m, path)
    if fmt == "csv":
        return EXIT_OK, inputs, None, to_csv(["x", "y"], [[x, y] for x, y in path.points])
    result = {"points": [[x, y] for x, y in path.points],
              "converged": path.converged, "limit": path.limit}
    return EXIT_OK, inputs, result, None


def _run_density(p: dict, fmt: str):
    m = parse_map_spec(p["map"])
    inputs = {"map": m.describe(), "depth": p["depth"], "threshold": p["threshold"]}
    if fmt == "csv":
        rows = []
        for k in range(1, p["depth"] + 1):
            pset = analysis.zero_preimage_set(m, k)
            rows.append([k, len(pset.points), pset.largest_gap])
        return EXIT_OK, inputs, None, to_csv(["depth", "count", "largest_gap"], rows)
    pset = analysis.zero_preimage_set(m, p["depth"])
    report = analysis.density_report(pset, p["threshold"])
    result = {"depth": pset.depth, "count": report.count,
              "largest_gap": report.largest_gap, "dense_estimate": report.dense_estimate}
    return EXIT_OK, inputs, result, None


def _rng_sample(n: int, seed: float, stage: str) -> list[float]:
    o = chaos_rng.logistic_sequence(seed, n)
    if stage == "raw":
        return list(o.values)
    uni = chaos_rng.uniformize(o)
    if stage == "uniform":
        return uni
    return chaos_rng.transform_to(uni, chaos_rng.square_distribution())


def _run_rng_generate(p: dict, fmt: str):
    seed = p["seed"] if p["seed"] is not None else _default_seed()
    values = _rng_sample(p["n"], seed, p["stage"])
    inputs = {"n": p["n"], "seed": seed, "stage": p["stage"]}
    if fmt == "csv":
        return EXIT_OK, inputs, None, to_csv(["k", "x"], [[k, v] for k, v in enumerate(values)])
    return EXIT_OK, inputs, {"values": values}, None


def _run_rng_ks(p: dict, fmt: str):
    seed = p["seed"] if p["seed"] is not None else _default_seed()
    cdf_name = p["cdf"]
    if cdf_name == "arcsine":
        values = _rng_sample(p["n"], seed, "raw")
        cdf = chaos_rng.arcsine_cdf
    elif cdf_name == "uniform":
        values = _rng_sample(p["n"], seed, "uniform")
        cdf = lambda x: x
    else:
        values = _rng_sample(p["n"], seed, "square")
        cdf = lambda x: x * x
    statistic = chaos_rng.ks_distance(values, cdf)
    code = EXIT_OK
    if p["tol"] is not None and statistic >= p["tol"]:
        code = EXIT_TOLERANCE
    inputs = {"n": p["n"], "seed": seed, "cdf": cdf_name, "tol": p["tol"]}
    if fmt == "csv":
        return code, inputs, None, to_csv(["statistic"], [[statistic]])
    return code, inputs, {"statistic": statistic}, None


def _run_rng_collapse(p: dict, fmt: str):
    bits = p["bits"]
    if p["exhaustive"]:
        if p["value"] is not None:
            raise UsageError("--value and --exhaustive are mutually exclusive")
        if bits > 24:
            raise UsageError("exhaustive enumeration is capped at 24 bits")
        max_steps, tested = 0, 0
        for value in range(2**bits):
            steps = chaos_rng.doubling_collapse(chaos_rng.FixedPointWord(bits, value), bits)
            assert steps is not None
            max_steps = max(max_steps, steps)
            tested += 1
        inputs = {"bits": bits, "exhaustive": True}
        result = {"max_steps": max_steps, "words_tested": tested}
        if fmt == "csv":
            return EXIT_OK, inputs, None, to_csv(["max_steps", "words_tested"],
                                                 [[max_steps, tested]])
        return EXIT_OK, inputs, result, None
    if p["value"] is None:
        raise UsageError("rng collapse needs --value or --exhaustive")
    word = chaos_rng.FixedPointWord(bits, p["value"])
    max_steps = p["max_steps"] if p["max_steps"] is not None else bits
    steps = chaos_rng.doubling_collapse(word, max_steps)
    inputs = {"bits": bits, "value": p["value"], "max_steps": max_steps}
    result = {"steps": steps}
    if fmt == "csv":
        return EXIT_OK, inputs, None, to_csv(["steps"], [["" if steps is None else steps]])
    return EXIT_OK, inputs, result, None


def _run_sensitivity(p: dict, fmt: str):
    m = parse_map_spec(p["map"])
    seps = maps.sensitivity_report(m, p["x0"], p["delta"], p["n"])
    inputs = {"map": m.describe(), "x0": p["x0"], "delta": p["delta"], "n": p["n"]}
    if fmt == "csv":
        return EXIT_OK, inputs, None, to_csv(["k", "separation"],
                                             [[k, s] for k, s in enumerate(seps)])
    return EXIT_OK, inputs, {"separations": seps}, None


_HANDLERS = {
    "iterate": _run_iterate,
    "orbit": _run_orbit,
    "fixed-points": _run_fixed_points,
    "closed-form check": _run_closed_form_check,
    "conjugacy verify": _run_conjugacy_verify,
    "conjugacy semiverify": _run_conjugacy_semiverify,
    "conjugacy order": _run_conjugacy_order,
    "conjugacy propagate": _run_conjugacy_propagate,
    "cobweb": _run_cobweb,
    "density": _run_density,
    "rng generate": _run_rng_generate,
    "rng ks": _run_rng_ks,
    "rng collapse": _run_rng_collapse,
    "sensitivity": _run_sensitivity,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Execute a parsed configuration; returns (exit code, output text)."""
    started = time.perf_counter()
    code, inputs, result, text = _HANDLERS[config.command](config.params, config.fmt)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    if text is not None:  # csv or svg payloads are already assembled
        return code, text
    document = {
        "subcommand": config.command,
        "inputs": inputs,
        "result": result,
        # measured timing is opt-in so that default output is byte-reproducible
        "elapsed_ms": elapsed_ms if config.timing else None,
    }
    return code, to_json(document) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_args(argv)
        code, text = run(config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ParameterError, RangeError,
            ImaginaryResidueError, EmptySampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except IntervalDynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OverflowError as exc:
        print(f"error: value out of binary64 range ({exc})", file=sys.stderr)
        return EXIT_DOMAIN
    if config.output:
        try:
            with open(config.output, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"error: cannot write {config.output}: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
