"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input (nothing is
written to standard output in that case).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import bounds2d, boundsnd, counting, oracle, verify
from .geometry import ConvexBodyND, GeometryError, shape_from_dict, summarize
from .regimes import Regime, constants_for
from .reports import RunReport, digest

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2

METHODS_2D = ("propmubound", "L1", "L2", "ncmu2", "noeval")
METHODS_ND = ("nd-gen", "nd-M1", "nd-M2", "nd-simple")


class InputError(Exception):
    """Anything wrong with the command line or the shape file."""


def _load_shape_dict(arg: str) -> dict:
    text = arg
    if not arg.lstrip().startswith("{"):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read shape file: {exc}") from exc
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed shape description: {exc}") from exc
    if not isinstance(d, dict):
        raise InputError("shape description must be a JSON object")
    return d


def _load_shape(args):
    if args.shape is None:
        raise InputError("--shape is required")
    d = _load_shape_dict(args.shape)
    if args.n is not None and d.get("kind", "").startswith("nd_"):
        d = {**d, "n": args.n}
    return d, shape_from_dict(d)


# --------------------------------------------------------------------------
# subcommands


def cmd_bound(args) -> RunReport:
    d, shape = _load_shape(args)
    method = args.method
    if method in METHODS_ND:
        if not isinstance(shape, ConvexBodyND):
            raise InputError(f"method {method} needs an n-dimensional shape (nd_ball or nd_summary)")
        regime = Regime(args.regime) if args.regime else Regime.CONVEX_ND
        ctx = boundsnd.NdBoundContext.from_body(shape, regime)
        if method == "nd-gen":
            artifact = boundsnd.prop_bound_gen_nd(ctx).to_dict()
        elif method == "nd-M1":
            artifact = boundsnd.bound_M1(ctx).to_dict()
        elif method == "nd-M2":
            artifact = boundsnd.bound_M2(ctx).to_dict()
        else:
            artifact = boundsnd.bound_conv_simple_nd(ctx).mu_bound.to_dict()
    else:
        if isinstance(shape, ConvexBodyND):
            raise InputError(f"method {method} needs a planar shape")
        s = summarize(shape)
        rc = constants_for(args.regime) if args.regime else None
        if method == "propmubound":
            artifact = bounds2d.prop_mu_bound(s, rc).to_dict()
        elif method == "L1":
            artifact = bounds2d.bound_L1(s).to_dict()
        elif method == "L2":
            artifact = bounds2d.bound_L2(s).to_dict()
        elif method == "ncmu2":
            if args.mu2 is None:
                raise InputError("method ncmu2 needs --mu2")
            artifact = bounds2d.bound_with_mu2(s, args.mu2).to_dict()
        else:
            artifact = bounds2d.bound_noeval_convex(s).mu_bound.to_dict()
    inputs = {"shape": d, "method": method, "regime": args.regime, "mu2": args.mu2}
    return RunReport(_echo(args), digest(inputs), [artifact])


def cmd_geometry(args) -> RunReport:
    d, shape = _load_shape(args)
    if isinstance(shape, ConvexBodyND):
        artifact = {**shape.to_dict(), "volume": shape.volume, "surface": shape.surface,
                    "t_plus": shape.t_plus, "delta0": shape.delta0, "diameter": shape.diameter,
                    "rho": shape.rho_nd}
    else:
        artifact = summarize(shape).to_dict()
    return RunReport(_echo(args), digest({"shape": d}), [artifact])


def _oracle_spectrum(d: dict, count: int):
    kind = d.get("kind")
    try:
        if kind == "disc":
            return oracle.disc_spectrum(float(d["radius"]), count)
        if kind == "rectangle":
            return oracle.rectangle_spectrum(float(d["a"]), float(d["b"]), count)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad '{kind}' description: {exc}") from exc
    raise InputError(f"oracle supports disc and rectangle shapes, not {kind!r}")


def cmd_oracle(args):
    if args.shape is None:
        raise InputError("--shape is required")
    d = _load_shape_dict(args.shape)
    spec = _oracle_spectrum(d, args.count)
    certs = oracle.courant_sharp_enumerate(spec)
    if args.format == "csv":
        return oracle.spectrum_to_csv(spec)
    artifact = {
        "kind": d["kind"],
        "count": len(spec),
        "spectrum": [{"index": e.index, "value": e.value, "mode": e.mode_label,
                      "multiplicity_class": e.multiplicity_class, "nodal_count": e.nodal_count}
                     for e in spec],
        "certificates": [c.to_dict() for c in certs],
        "degenerate": oracle.has_degeneracy(spec) if d["kind"] == "rectangle" else None,
    }
    return RunReport(_echo(args), digest({"shape": d, "count": args.count}), [artifact])


def cmd_count_bound(args) -> RunReport:
    if args.mu is None:
        raise InputError("count-bound needs --mu")
    d, shape = _load_shape(args)
    if isinstance(shape, ConvexBodyND):
        inp = counting.CountingBoundInput(shape.n, shape.volume, shape.surface, shape.t_plus, args.mu)
        convex = True
    else:
        s = summarize(shape)
        inp = counting.CountingBoundInput(2, s.area, s.perimeter, s.t_plus, args.mu)
        convex = s.is_convex
    artifact = {**counting.counting_report(inp), "is_convex": convex}
    return RunReport(_echo(args), digest({"shape": d, "mu": args.mu}), [artifact])


def cmd_verify(args) -> RunReport:
    rows = verify.run_checks()
    print(verify.format_table(rows), file=sys.stderr)
    return RunReport(_echo(args), digest({"verify": True}), [], rows)


# --------------------------------------------------------------------------


def _echo(args) -> list:
    return list(getattr(args, "_argv", []))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="courantsharp",
                                description="Upper bounds for Courant-sharp Neumann and Robin eigenvalues.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, shape=True):
        if shape:
            sp.add_argument("--shape", help="shape file, or an inline JSON object")
        sp.add_argument("--out", help="write the result here instead of standard output")
        sp.add_argument("--timing", action="store_true", help="include wall time in the report")

    b = sub.add_parser("bound", help="evaluate an eigenvalue bound for a shape")
    common(b)
    b.add_argument("--method", required=True, choices=METHODS_2D + METHODS_ND)
    b.add_argument("--regime", choices=[r.value for r in Regime], help="override the detected constant set")
    b.add_argument("--n", type=int, help="dimension for n-dimensional shapes")
    b.add_argument("--mu2", type=float, help="first positive Neumann eigenvalue (method ncmu2)")

    g = sub.add_parser("geometry", help="dump the geometric summary of a shape")
    common(g)
    g.add_argument("--n", type=int)

    o = sub.add_parser("oracle", help="exact disc or rectangle spectrum with Courant-sharp certificates")
    common(o)
    o.add_argument("--count", type=int, required=True)
    o.add_argument("--format", choices=("json", "csv"), default="json")

    c = sub.add_parser("count-bound", help="upper bound for the Neumann counting function of a convex body")
    common(c)
    c.add_argument("--mu", type=float)
    c.add_argument("--n", type=int)

    v = sub.add_parser("verify", help="run the reference-number and property checks")
    common(v, shape=False)
    return p


_COMMANDS = {"bound": cmd_bound, "geometry": cmd_geometry, "oracle": cmd_oracle,
             "count-bound": cmd_count_bound, "verify": cmd_verify}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    args._argv = argv
    t0 = time.perf_counter()
    try:
        result = _COMMANDS[args.command](args)
    except (InputError, GeometryError, ValueError, OverflowError) as exc:
        print(f"courantsharp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(result, RunReport):
        result.wall_time = time.perf_counter() - t0
        text = result.to_json(timing=args.timing) + "\n"
        code = EXIT_OK if result.passed else EXIT_CHECK
    else:
        text, code = result, EXIT_OK
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
