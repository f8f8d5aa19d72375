"""Command-line front end.

Every command is deterministic given its arguments (randomized sweeps take
``--seed``).  Errors leave a machine-readable JSON object on stderr:
``{"error": <code>, "detail": <message>}``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import svg
from .cfrac import expand, ostrowski_decompose, ostrowski_validate
from .errors import BadArgs, PolygeoError
from .exact import parse_rational, parse_value
from .flow import coverage_radius_estimate, trace_crossings
from .rotation import UnitInterval, integer_hit_count, orbit, orbit_threshold, visiting_number
from .surface import resolve_surface
from .uniformity import (
    classify_case,
    coarse_window_check,
    crossing_threshold,
    family_extremes,
)

GRID_BITS = 24  # random interval endpoints live on the 2**-24 grid


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse API
        raise BadArgs(message)


def _fraction_arg(text: str) -> Fraction:
    return parse_rational(text)


def _eps_arg(text: str) -> Fraction:
    eps = parse_rational(text)
    if not 0 < eps < 1:
        raise BadArgs(f"eps must be in (0, 1), got {text}")
    return eps


def _build_parser() -> _Parser:
    parser = _Parser(prog="polygeo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, surface=False, alpha=True, n=False, eps=False):
        if surface:
            p.add_argument("--surface", required=True, help="fixture name (torus, L3) or JSON path")
        if alpha:
            p.add_argument("--alpha", required=True, help="phi | sqrt2 | sqrt3 | quad:a,b,c,d")
        if n:
            p.add_argument("--n", type=int, required=True)
        if eps:
            p.add_argument("--eps", type=_eps_arg, required=True)
        p.add_argument("--format", choices=("json", "csv", "svg"), default=None)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("cf", help="continued-fraction digits and convergents")
    common(p)
    p.add_argument("--digits", type=int, default=20)

    p = sub.add_parser("ostrowski", help="digit vector of N over the convergent denominators")
    common(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("rotate", help="rotation orbit and visiting numbers")
    common(p, n=True)
    p.add_argument("--y0", type=_fraction_arg, default=Fraction(0))
    p.add_argument("--interval", default=None, help="lo,hi subinterval of [0,1)")

    p = sub.add_parser("lemma1", help="integer-hit counts over random beta intervals")
    common(p)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--len", dest="length", required=True, help="1/q | 3/q | a fraction")
    p.add_argument("--count", type=int, default=1000)

    p = sub.add_parser("threshold-a", help="window-scale threshold for the rotation orbit")
    common(p, n=True, eps=True)
    p.add_argument("--y0", type=_fraction_arg, default=Fraction(0))

    p = sub.add_parser("trace", help="first n vertical-edge crossings of the flow")
    common(p, surface=True, n=True)
    p.add_argument("--y0", type=_fraction_arg, default=Fraction(1, 2))
    p.add_argument("--square", type=int, default=0)

    p = sub.add_parser("superdensity", help="coverage-length growth over a doubling grid of m")
    common(p, surface=True)
    p.add_argument("--mmax", type=int, default=32)
    p.add_argument("--y0", type=_fraction_arg, default=Fraction(1, 2))
    p.add_argument("--square", type=int, default=0)

    p = sub.add_parser("uniformity", help="window-count extremes at one scale (or a sweep)")
    common(p, surface=True, n=True)
    p.add_argument("--C", type=_fraction_arg, default=None)
    p.add_argument("--eps", type=_eps_arg, default=None)
    p.add_argument("--sweep", default=None, help="lo:hi:steps geometric grid of C values")
    p.add_argument("--y0", type=_fraction_arg, default=Fraction(1, 2))
    p.add_argument("--square", type=int, default=0)

    p = sub.add_parser("threshold", help="window-scale threshold for the crossing set")
    common(p, surface=True, n=True, eps=True)
    p.add_argument("--y0", type=_fraction_arg, default=Fraction(1, 2))
    p.add_argument("--square", type=int, default=0)

    p = sub.add_parser("lemma3", help="count bounds for long windows under the scale-C maximum")
    common(p, surface=True, n=True, eps=True)
    p.add_argument("--C", type=_fraction_arg, required=True)
    p.add_argument("--jlen", type=_fraction_arg, default=None, help="window length (default 3C/(eps*n))")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--y0", type=_fraction_arg, default=Fraction(1, 2))
    p.add_argument("--square", type=int, default=0)

    return parser


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("POLYGEO_THREADS")
    return max(1, int(env)) if env else 1


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(args, payload: dict) -> None:
    _write(args, json.dumps(payload, indent=2))


def _emit_csv(args, header: str, rows) -> None:
    _write(args, "\n".join([header, *rows]) + "\n")


def _rand_grid(rng: random.Random, upper: Fraction) -> Fraction:
    span = int(upper * (1 << GRID_BITS))
    return Fraction(rng.randint(0, max(span, 0)), 1 << GRID_BITS)


def _cmd_cf(args) -> None:
    alpha = parse_value(args.alpha)
    cf = expand(alpha)
    count = max(1, args.digits)
    _emit_json(
        args,
        {
            "alpha": str(alpha),
            "digits": cf.digits(count),
            "preperiod": list(cf.preperiod),
            "period": list(cf.period),
            "digit_bound": cf.digit_bound,
            "q": cf.denominators(count),
        },
    )


def _cmd_ostrowski(args) -> None:
    alpha = parse_value(args.alpha)
    cf = expand(alpha)
    dig = ostrowski_decompose(args.n, cf)
    _emit_json(
        args,
        {
            "n": dig.value,
            "digits": list(dig.digits),
            "q": cf.denominators(len(dig.digits)),
            "valid": ostrowski_validate(dig, cf),
        },
    )


def _cmd_rotate(args) -> None:
    alpha = parse_value(args.alpha)
    prefix = orbit(alpha, args.n, offset=args.y0)
    if args.interval:
        lo_text, hi_text = args.interval.split(",")
        interval = UnitInterval(parse_rational(lo_text), parse_rational(hi_text))
        count = visiting_number(prefix, interval)
        expected = args.n * (Fraction(parse_rational(hi_text)) - parse_rational(lo_text))
        _emit_json(
            args,
            {
                "n": args.n,
                "interval": [str(interval.lower), str(interval.upper)],
                "visiting_number": count,
                "expected": float(expected),
                "deviation": float(count - expected),
            },
        )
        return
    fmt = args.format or "csv"
    if fmt == "svg":
        _write(args, svg.histogram([float(p) for p in prefix.points], title="orbit heights"))
    elif fmt == "json":
        _emit_json(args, {"n": args.n, "points": [p.decimal(40) for p in prefix.points]})
    else:
        _emit_csv(
            args,
            "k,frac_decimal_40",
            (f"{k},{p.decimal(40)}" for k, p in enumerate(prefix.points, start=1)),
        )


def _cmd_lemma1(args) -> None:
    alpha = parse_value(args.alpha)
    cf = expand(alpha)
    q_h = cf.convergents(args.h + 1)[args.h].q
    text = args.length.strip()
    if text == "1/q":
        length = Fraction(1, q_h)
    elif text == "3/q":
        length = Fraction(3, q_h)
    else:
        length = parse_rational(text)
    if not 0 < length <= 1:
        raise BadArgs(f"interval length must be in (0,1], got {length}")
    rng = random.Random(args.seed)
    histogram: dict[int, int] = {}
    for _ in range(args.count):
        lo = _rand_grid(rng, 1 - length)
        count = integer_hit_count(alpha, args.h, lo, lo + length)
        histogram[count] = histogram.get(count, 0) + 1
    _emit_json(
        args,
        {
            "h": args.h,
            "q_h": q_h,
            "length": str(length),
            "intervals": args.count,
            "seed": args.seed,
            "count_min": min(histogram),
            "count_max": max(histogram),
            "histogram": {str(k): v for k, v in sorted(histogram.items())},
        },
    )


def _cmd_threshold_a(args) -> None:
    alpha = parse_value(args.alpha)
    bracket = orbit_threshold(alpha, args.n, args.eps, offset=args.y0, threads=_threads(args))
    _emit_json(args, bracket.to_json())


def _cmd_trace(args) -> None:
    surf = resolve_surface(args.surface)
    crossings = trace_crossings(surf, parse_value(args.alpha), args.y0, args.n, args.square)
    fmt = args.format or "csv"
    if fmt == "svg":
        _write(
            args,
            svg.histogram([float(c.height) for c in crossings.crossings], title="crossing heights"),
        )
    elif fmt == "json":
        per_edge = {str(e): len(h) for e, h in sorted(crossings.per_edge_heights().items())}
        _emit_json(args, {"n": args.n, "edges": per_edge})
    else:
        _emit_csv(
            args,
            "k,edge,height_decimal_40",
            (f"{c.k},{c.edge},{c.height.decimal(40)}" for c in crossings.crossings),
        )


def _cmd_superdensity(args) -> None:
    surf = resolve_surface(args.surface)
    alpha = parse_value(args.alpha)
    grid = []
    m = 1
    while m <= args.mmax:
        grid.append(m)
        m *= 2
    estimates = [
        coverage_radius_estimate(surf, alpha, m, y0=args.y0, square=args.square) for m in grid
    ]
    ratios = [e.arc_per_m for e in estimates]
    payload = {
        "m": grid,
        "arc_length": [e.arc_length for e in estimates],
        "arc_per_m": ratios,
        "c0_estimate": max(ratios),
    }
    if (args.format or "json") == "csv":
        _emit_csv(
            args,
            "m,arc_length,arc_per_m",
            (f"{e.m},{e.arc_length:.6f},{e.arc_per_m:.6f}" for e in estimates),
        )
    else:
        _emit_json(args, payload)


def _sweep_grid(text: str) -> list[Fraction]:
    try:
        lo_s, hi_s, steps_s = text.split(":")
        lo, hi, steps = parse_rational(lo_s), parse_rational(hi_s), int(steps_s)
    except ValueError as exc:
        raise BadArgs(f"bad sweep spec {text!r}; expected lo:hi:steps") from exc
    if steps < 2 or not 0 < lo < hi:
        raise BadArgs(f"bad sweep spec {text!r}")
    ratio = (float(hi) / float(lo)) ** (1.0 / (steps - 1))
    out = [lo]
    for _ in range(steps - 2):
        out.append(Fraction(float(out[-1]) * ratio).limit_denominator(1 << GRID_BITS))
    out.append(hi)
    return out


def _cmd_uniformity(args) -> None:
    surf = resolve_surface(args.surface)
    crossings = trace_crossings(surf, parse_value(args.alpha), args.y0, args.n, args.square)
    threads = _threads(args)

    def row(C: Fraction):
        report = family_extremes(crossings, C, threads=threads)
        label = classify_case(report, args.eps) if args.eps else ""
        return report, label

    if args.sweep:
        grid = _sweep_grid(args.sweep)
        rows = [row(C) for C in grid]
        if (args.format or "csv") == "svg":
            pts = [(float(r.spec.C), float(r.ratio)) for r, _ in rows]
            _write(args, svg.line_chart([("min/max", pts)], title="window-count ratio", xlabel="C"))
        else:
            _emit_csv(
                args,
                "C,min,max,ratio,case",
                (
                    f"{r.spec.C},{r.min_visits},{r.max_visits},{float(r.ratio):.6f},{label}"
                    for r, label in rows
                ),
            )
        return
    if args.C is None:
        raise BadArgs("uniformity needs --C or --sweep")
    report, label = row(args.C)
    payload = {
        "n": report.spec.n,
        "C": str(report.spec.C),
        "length": str(report.spec.length),
        "b": report.b,
        "min": report.min_visits,
        "max": report.max_visits,
        "expected": str(report.expected),
        "ratio": float(report.ratio),
        "min_witness": {
            "edge": report.min_witness.edge,
            "position": _pos_text(report.min_witness.position),
            "closed": report.min_witness.closed,
        },
        "max_witness": {
            "edge": report.max_witness.edge,
            "position": _pos_text(report.max_witness.position),
            "closed": report.max_witness.closed,
        },
    }
    if label:
        payload["case"] = label
        payload["eps"] = str(args.eps)
    _emit_json(args, payload)


def _pos_text(position) -> str:
    if isinstance(position, Fraction):
        return str(position)
    return position.decimal(40)


def _cmd_threshold(args) -> None:
    surf = resolve_surface(args.surface)
    crossings = trace_crossings(surf, parse_value(args.alpha), args.y0, args.n, args.square)
    bracket = crossing_threshold(crossings, args.eps, threads=_threads(args))
    if args.format == "svg":
        pts_ok = [(float(c), 1.0) for c, ok in bracket.probes if ok]
        pts_bad = [(float(c), 0.0) for c, ok in bracket.probes if not ok]
        _write(
            args,
            svg.line_chart(
                [("pass", pts_ok), ("fail", pts_bad)],
                title="threshold probes",
                xlabel="C",
                ylabel="pass",
            ),
        )
    else:
        _emit_json(args, bracket.to_json())


def _cmd_lemma3(args) -> None:
    surf = resolve_surface(args.surface)
    crossings = trace_crossings(surf, parse_value(args.alpha), args.y0, args.n, args.square)
    length = args.jlen if args.jlen is not None else 3 * args.C / (args.eps * args.n)
    if not 0 < length <= 1:
        raise BadArgs(f"window length {length} outside (0, 1]")
    rng = random.Random(args.seed)
    checked = passed = 0
    b = surf.squares
    max_scaled_dev = 0.0
    for _ in range(args.count):
        edge = rng.randrange(b)
        lo = _rand_grid(rng, 1 - length)
        ok = coarse_window_check(crossings, args.C, edge, lo, lo + length, args.eps)
        checked += 1
        passed += ok
        count = crossings.per_edge_heights()[edge].count_in(lo, lo + length)
        expected = Fraction(args.n) * length / b
        max_scaled_dev = max(max_scaled_dev, abs(float((count - expected) / expected)))
    _emit_json(
        args,
        {
            "count": checked,
            "passed": passed,
            "length": str(length),
            "C": str(args.C),
            "eps": str(args.eps),
            "max_relative_deviation": max_scaled_dev,
            "deviation_bound": float(3 * args.eps / (1 - args.eps)),
        },
    )


_HANDLERS = {
    "cf": _cmd_cf,
    "ostrowski": _cmd_ostrowski,
    "rotate": _cmd_rotate,
    "lemma1": _cmd_lemma1,
    "threshold-a": _cmd_threshold_a,
    "trace": _cmd_trace,
    "superdensity": _cmd_superdensity,
    "uniformity": _cmd_uniformity,
    "threshold": _cmd_threshold,
    "lemma3": _cmd_lemma3,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _HANDLERS[args.command](args)
        return 0
    except BadArgs as exc:
        sys.stderr.write(json.dumps({"error": exc.code, "detail": str(exc)}) + "\n")
        return 2
    except PolygeoError as exc:
        sys.stderr.write(json.dumps({"error": exc.code, "detail": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
