"""Command-line front end.

Each subcommand prints a single JSON report on stdout (sorted keys, so
output is byte-deterministic for a fixed argv and seed) and exits with

* 0 — the command ran and every check it performed passed,
* 1 — a verification failed; the report carries the first counterexample,
* 2 — malformed input.

The report envelope is described by ``report_schema.json`` shipped with
the package.  Exact rationals cross the boundary as "p/q" strings,
number-field elements as coefficient vectors plus a float approximation,
binary sequences as "u(v)" (preperiod, then period in parentheses).
Relative ``--path`` arguments are resolved under ``$AYFAMILY_OUT_DIR``
when that variable is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from typing import Any

from . import binseq as bs
from . import builders, svgout, veech
from .iet import (
    build_f_g,
    build_h_g,
    conjugate,
    first_return,
    half_rotation,
    iet_compose,
    iet_equal,
    iet_inverse,
)
from .numfield import NFElem, check_half_bound, field
from .surface import Pt, first_return_iet, trace

DEFAULT_SEED = 0

OUT_DIR_ENV = "AYFAMILY_OUT_DIR"


def report_schema() -> dict:
    """The shipped JSON schema for CLI reports."""
    text = resources.files(__package__).joinpath("report_schema.json").read_text()
    return json.loads(text)


# -- exact values at the text boundary -----------------------------------


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational 'p/q': {text!r}") from exc


def _value_json(v: Any) -> dict:
    """A number-field or rational value as exact-plus-approximate JSON."""
    if isinstance(v, NFElem):
        return {"coeffs": v.coeff_strings(), "approx": float(v)}
    q = Fraction(v)
    return {"coeffs": [str(q)], "approx": float(q)}


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, separators=(",", ": ")))
    sys.stdout.write("\n")


def _envelope(command: str, seed: int, ok: bool, summary: str, data: dict) -> dict:
    return {
        "command": command,
        "seed": seed,
        "ok": ok,
        "summary": f"{summary} [seed {seed}]",
        "data": data,
    }


def _resolve_path(path: str) -> str:
    base = os.environ.get(OUT_DIR_ENV, "")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


# -- build ----------------------------------------------------------------


def _cmd_build(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.genus == "inf":
        if args.presentation != "truncation":
            parser.error("--genus inf requires --presentation truncation")
        N = args.truncation if args.truncation is not None else 3
        if N < 1:
            parser.error("--truncation must be >= 1")
        S = builders.build_limit_truncation(N)
        label = f"limit truncation N={N}"
    else:
        g = args.genus
        if args.truncation is not None:
            parser.error("--truncation only applies to --genus inf")
        if args.presentation == "staircase":
            S = builders.build_staircase(g)
        elif args.presentation == "triangulated":
            if g < 3:
                parser.error("--presentation triangulated requires genus >= 3")
            S = builders.build_triangulation(g)
        else:
            parser.error("--presentation truncation requires --genus inf")
        label = f"genus {g} ({args.presentation})"

    if args.out == "json":
        document = json.dumps(S.to_json(), sort_keys=True, separators=(",", ": "))
    else:
        document = svgout.surface_svg(S)

    comps = S.components()
    data: dict[str, Any] = {
        "triangles": len(S.triangles),
        "genus": comps[0].genus if len(comps) == 1 else [c.genus for c in comps],
        "format": args.out,
    }
    if args.path:
        path = _resolve_path(args.path)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(document)
            if args.out == "json":
                fh.write("\n")
        data["path"] = path
        summary = f"built {label}: {data['triangles']} triangles -> {path}"
    else:
        data["document"] = document
        summary = f"built {label}: {data['triangles']} triangles"
    _emit(_envelope("build", args.seed, True, summary, data))
    return 0


# -- verify ---------------------------------------------------------------


def _suite_bounds(g: int) -> dict[str, bool]:
    return {"half-bound": check_half_bound(g)}


def _suite_iet(g: int) -> dict[str, bool]:
    f = build_f_g(g)
    h = build_h_g(g)
    alpha = field(g).alpha()
    selfsim = iet_equal(first_return(f, alpha), conjugate(f, h))
    r = half_rotation(f.length)
    involution = iet_equal(iet_compose(r, iet_compose(f, r)), iet_inverse(f))
    return {"self-similarity": selfsim, "involution": involution}


def _suite_surface(g: int) -> dict[str, bool]:
    S = builders.build_staircase(g)
    spec = builders.staircase_spec(g) if g >= 2 else None
    checks: dict[str, bool] = {}
    checks["staircase-valid"] = S.validate().ok
    if g == 2:
        comps = S.components()
        checks["two-torus-components"] = len(comps) == 2 and all(
            c.genus == 1 for c in comps
        )
    else:
        checks["staircase-genus"] = S.euler_genus().genus == g
    if spec is not None:
        checks["staircase-area"] = S.area() == spec.area
    section = builders.bottom_section(S)
    ret = first_return_iet(S, section)
    model = build_f_g(g) if g >= 2 else half_rotation(Fraction(1))
    checks["vertical-return-is-f"] = iet_equal(ret, model)
    if g >= 3:
        T = builders.build_triangulation(g)
        checks["triangulation-valid"] = T.validate().ok
        checks["triangulation-genus"] = T.euler_genus().genus == g
        w = T.cone_windings()
        checks["two-cone-points"] = sorted(w.values()) == [g, g]
        checks["areas-agree"] = T.area() == S.area()
    return checks


def _suite_psi(g: int) -> dict[str, bool]:
    return dict(builders.verify_psi(g).checks)


def _suite_rho(g: int) -> dict[str, bool]:
    return dict(builders.verify_rho(g).checks)


_SUITES = {
    "bounds": _suite_bounds,
    "iet": _suite_iet,
    "psi": _suite_psi,
    "rho": _suite_rho,
    "surface": _suite_surface,
}


def _cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    g = args.genus
    names = sorted(_SUITES) if args.suite == "all" else [args.suite]
    if g < 2:
        bad = [n for n in names if n != "surface"]
        if bad:
            parser.error(f"suite(s) {', '.join(bad)} require --genus >= 2")
    results: dict[str, dict[str, bool]] = {}
    first_failure = None
    for name in names:
        checks = _SUITES[name](g)
        results[name] = checks
        if first_failure is None:
            for check, value in checks.items():
                if not value:
                    first_failure = {"suite": name, "check": check}
                    break
    ok = first_failure is None
    data: dict[str, Any] = {"genus": g, "suites": results}
    if ok:
        summary = f"verify genus {g}: {', '.join(names)} all passed"
    else:
        data["counterexample"] = first_failure
        summary = (
            f"verify genus {g}: FAILED {first_failure['suite']}"
            f"/{first_failure['check']}"
        )
    _emit(_envelope("verify", args.seed, ok, summary, data))
    return 0 if ok else 1


# -- iet ------------------------------------------------------------------


def _cmd_iet(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    g = args.genus
    if not 0 <= args.start < 1:
        parser.error("--start must lie in [0, 1)")
    if args.steps < 0:
        parser.error("--steps must be >= 0")
    f = build_f_g(g, allow_degenerate=True)
    x0 = field(g).rational(args.start)
    values = f.orbit(x0, args.steps)
    data = {
        "genus": g,
        "start": str(args.start),
        "steps": args.steps,
        "orbit": [_value_json(v) for v in values],
    }
    summary = f"orbit of {args.start} under f_{g}: {args.steps} steps"
    _emit(_envelope("iet", args.seed, True, summary, data))
    return 0


# -- infinite -------------------------------------------------------------


def _parse_binseq(text: str, parser: argparse.ArgumentParser) -> bs.BinSeq:
    try:
        return bs.BinSeq.from_text(text)
    except ValueError as exc:
        parser.error(f"bad binary sequence literal {text!r}: {exc}")


def _cmd_infinite(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    action = args.action
    if action == "conjugacies":
        result = bs.verify_conjugacies(args.samples, seed=args.seed)
        ok = result["ok"]
        data = {"samples": args.samples, "result": result}
        summary = (
            f"conjugacy identities on {args.samples} random sequences: "
            + ("all hold" if ok else "counterexample found")
        )
        _emit(_envelope("infinite", args.seed, ok, summary, data))
        return 0 if ok else 1

    if args.point is None:
        parser.error(f"infinite {action} requires --point")
    a = _parse_binseq(args.point, parser)
    if action == "apply":
        image = bs.f_inf(a)
        data = {
            "point": a.to_text(),
            "value": str(a.to_fraction()),
            "image": image.to_text(),
            "image_value": str(image.to_fraction()),
        }
        summary = f"f_inf({a.to_text()}) = {image.to_text()}"
    elif action == "classify":
        if not a.is_dyadic():
            parser.error("classify needs a dyadic point (finite binary expansion)")
        cls = bs.classify_orbit(a)
        base = {"zero": "0", "half": "1/2"}[cls.base]
        data = {
            "point": a.to_text(),
            "base": base,
            "n": cls.n,
        }
        summary = f"{a.to_text()}: base={base}, n={cls.n:+d}"
    else:  # orbit-index
        if not a.is_dyadic():
            parser.error("orbit-index needs a dyadic point")
        row = bs.orbit_table_row(a)
        base = {"zero": "0", "half": "1/2"}[row.base]
        data = {
            "point": a.to_text(),
            "tm": bs.tm(a),
            "ind": bs.ind(a),
            "base": base,
            "sign": row.n,
        }
        summary = (
            f"{a.to_text()}: TM={data['tm']}, Ind={data['ind']}, "
            f"orbit O{'+' if row.n >= 0 else '-'}({base})"
        )
    _emit(_envelope("infinite", args.seed, True, summary, data))
    return 0


# -- trace ----------------------------------------------------------------


def _cmd_trace(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    g = args.genus
    if not 0 <= args.x < 1:
        parser.error("--x must lie in [0, 1)")
    if args.budget < 1:
        parser.error("--budget must be >= 1")
    S = builders.build_staircase(g)
    section = builders.bottom_section(S)
    start_tri = None
    for t, e in section:
        a, b = S.edge_endpoints((t, e))
        if a.x <= args.x and args.x < b.x:
            start_tri = t
            break
    if start_tri is None:
        parser.error("--x is not inside the bottom edge")
    res = trace(
        S,
        start_tri,
        Pt(Fraction(args.x), Fraction(0)),
        Pt(Fraction(0), Fraction(1)),
        budget=args.budget,
        section=section,
    )
    data = {
        "genus": g,
        "x": str(args.x),
        "direction": "vertical",
        "kind": res.kind,
        "crossings": len(res.crossings),
        "length": _value_json(res.param_length),
    }
    if res.kind == "returns_to_section":
        data["return_point"] = _value_json(res.end_point.x)
    summary = f"vertical trace from x={args.x} on genus {g}: {res.kind}"
    _emit(_envelope("trace", args.seed, True, summary, data))
    return 0


# -- veech2 ---------------------------------------------------------------


def _cmd_veech2(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.action == "check":
        m = veech.IntMat2(*args.entries)
        if m.det() != 1:
            parser.error(f"matrix must have determinant 1, got {m.det()}")
        member = veech.in_intersection(m)
        conj = veech.conjugation_entries(m)
        oracle = conj == veech.conjugate_via_lattices(m)
        integral = all(e.denominator == 1 for e in conj.entries())
        data = {
            "matrix": list(m),
            "in_intersection": member,
            "conjugation": [str(e) for e in conj.entries()],
            "conjugation_integral": integral,
            "oracle_agrees": oracle and integral == member,
        }
        verdict = "in intersection" if member else "not in intersection"
        summary = f"[{m.X},{m.Y};{m.Z},{m.W}]: {verdict}"
        _emit(_envelope("veech2", args.seed, True, summary, data))
        return 0

    sweep = veech.verify_criterion_equivalence(args.range)
    closure = veech.verify_group_closure(seed=args.seed)
    lattice = veech.sublattice_index5()
    ok = sweep.ok and closure.ok and lattice["ok"]
    data: dict[str, Any] = {
        "range": args.range,
        "det1_checked": sweep.checked,
        "closure_pairs": closure.checked,
        "sublattice": lattice["checks"],
    }
    if not ok:
        bad = sweep.counterexample or closure.counterexample
        data["counterexample"] = list(bad) if bad else None
    summary = (
        f"veech2 sweep range {args.range}: "
        + (f"{sweep.checked} matrices agree" if ok else "FAILED")
    )
    _emit(_envelope("veech2", args.seed, ok, summary, data))
    return 0 if ok else 1


# -- parser ---------------------------------------------------------------


def _genus_arg(text: str) -> "int | str":
    if text == "inf":
        return "inf"
    try:
        g = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"genus must be an integer or 'inf': {text!r}") from exc
    if g < 1:
        raise argparse.ArgumentTypeError("genus must be >= 1")
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ayfamily",
        description="Arnoux-Yoccoz family: exact builders, dynamics and reports.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help=f"seed for randomized suites (default {DEFAULT_SEED}, echoed in reports)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a surface and emit JSON or SVG")
    p.add_argument("--genus", type=_genus_arg, required=True, help="integer or 'inf'")
    p.add_argument("--truncation", type=int, help="stage N for --genus inf")
    p.add_argument(
        "--presentation",
        choices=["staircase", "triangulated", "truncation"],
        required=True,
    )
    p.add_argument("--out", choices=["json", "svg"], required=True)
    p.add_argument("--path", help=f"output file (relative paths resolve under ${OUT_DIR_ENV})")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument(
        "--suite",
        choices=sorted(_SUITES) + ["all"],
        default="all",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("iet", help="interval-exchange queries")
    p.add_argument("action", choices=["orbit"])
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--start", type=_parse_fraction, required=True, help="rational 'p/q'")
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=_cmd_iet)

    p = sub.add_parser("infinite", help="digit-sequence dynamics of the limit map")
    p.add_argument(
        "action", choices=["apply", "classify", "orbit-index", "conjugacies"]
    )
    p.add_argument("--point", help="binary sequence 'u(v)', e.g. '11(0)'")
    p.add_argument("--samples", type=int, default=10000)
    p.set_defaults(func=_cmd_infinite)

    p = sub.add_parser("trace", help="trace a straight line on a staircase surface")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--x", type=_parse_fraction, required=True, help="abscissa 'p/q'")
    p.add_argument("--direction", choices=["vertical"], default="vertical")
    p.add_argument("--budget", type=int, default=100000)
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("veech2", help="genus-2 Veech-group membership")
    vsub = p.add_subparsers(dest="action", required=True)
    pc = vsub.add_parser("check", help="test one integer matrix X Y Z W")
    pc.add_argument("entries", type=int, nargs=4, metavar=("X", "Y", "Z", "W"))
    pc.set_defaults(func=_cmd_veech2, action="check")
    ps = vsub.add_parser("sweep", help="criterion vs conjugation over a box")
    ps.add_argument("--range", type=int, default=10)
    ps.set_defaults(func=_cmd_veech2, action="sweep")

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.genus < 1:
        parser.error("genus must be >= 1")
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
