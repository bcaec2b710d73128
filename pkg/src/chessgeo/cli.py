"""The ``chessgeo`` command line."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import geodesic, homog, normlen, render, verify
from .errors import DomainError, OracleResourceError, UnsupportedRegimeError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2
DEFAULT_SCALE = 8


class CliError(Exception):
    """Bad input caught before any computation."""


class _Parser(argparse.ArgumentParser):
    # usage errors are bad input, not verification failures, so they share exit code 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _num(v):
    return float(render.fmt(v))


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _beta(args, allow_one=False):
    b = args.beta if args.beta is not None else getattr(args, "beta_pos", None)
    if b is None:
        raise CliError("a refractive index is required (positional or --beta)")
    if b < 1 or (b == 1 and not allow_one):
        raise CliError(f"beta must be {'>= 1' if allow_one else '> 1'}, got {b}")
    return b


def _need_format(args, allowed):
    if args.format not in allowed:
        raise CliError(f"--format {args.format} not available here; choose from {', '.join(allowed)}")


def cmd_betac(args) -> str:
    _need_format(args, ("csv", "json"))
    if args.max_k < 0:
        raise CliError("--max-k must be non-negative")
    table = normlen.CriticalTable.build(args.max_k)
    if args.format == "json":
        return _dump_json([{"k": k, "beta_c": _num(b)} for k, b in table.entries])
    return table.to_csv()


def cmd_normlen(args) -> str:
    beta = _beta(args)
    if args.step <= 0 or args.t_max < 0:
        raise CliError("need --step > 0 and --t-max >= 0")
    ts = np.arange(round(args.t_max / args.step) + 1) * args.step
    ls = np.atleast_1d(normlen.norm_len(ts, beta))
    if args.format == "svg":
        return render.line_plot_svg(ts, ls, f"l(t, beta={render.fmt(beta)})")
    if args.format == "json":
        return _dump_json({"beta": _num(beta), "t": [_num(t) for t in ts], "l": [_num(v) for v in ls]})
    return render.csv_table(("t", "l"), [(float(t), float(v)) for t, v in zip(ts, ls)])


def cmd_delta(args) -> str:
    _need_format(args, ("csv", "json"))
    beta = _beta(args, allow_one=True)
    if args.max_k < 0:
        raise CliError("--max-k must be non-negative")
    ks = np.arange(args.max_k + 1)
    ds = np.atleast_1d(normlen.delta(ks, beta))
    if args.format == "json":
        return _dump_json([{"k": int(k), "delta": _num(d)} for k, d in zip(ks, ds)])
    return render.csv_table(("k", "delta"), [(int(k), float(d)) for k, d in zip(ks, ds)])


def cmd_kc(args) -> str:
    _need_format(args, ("csv", "json"))
    beta = _beta(args)
    kc = normlen.k_c(beta)
    row = {"beta": _num(beta), "k_c": kc, "minimizer": _num(2.0 * kc), "min_l": _num(normlen.norm_len(2.0 * kc, beta))}
    if args.format == "json":
        return _dump_json(row)
    return render.csv_table(("beta", "k_c", "minimizer", "min_l"), [(float(beta), kc, 2.0 * kc, row["min_l"])])


def cmd_geodesic(args) -> str:
    _need_format(args, ("json", "svg"))
    beta = _beta(args)
    if args.oracle is not None:
        if args.oracle < 2:
            raise CliError("--oracle N needs N >= 2")
        res = geodesic.oracle_geodesic(args.n, args.j, beta, args.oracle)
    else:
        res = geodesic.geodesic_to_light_vertex(args.n, args.j, beta)
    if args.format == "svg":
        return render.polyline_svg(res.breakpoints, beta)
    return res.to_json() + "\n"


def cmd_phi(args) -> str:
    _need_format(args, ("csv", "json"))
    beta = _beta(args)
    x, y = args.x, args.y
    error_bound = None
    if args.oracle is not None:
        if args.scale < 2 or args.oracle < 2:
            raise CliError("--scale and --oracle need values >= 2")
        est = homog.phi_estimate(x, y, beta, args.scale, refinement=args.oracle)
        value, source, error_bound, conjectural = est.value, "oracle", est.error_bound, est.conjectural
    elif beta >= homog.SQRT_3_2:
        value, source, conjectural = homog.phi(x, y, beta), "closed_form", False
    elif homog.in_cones(x, y, beta):
        value, source, conjectural = homog.phi_on_cone(x, y, beta), "cone", False
    else:
        raise UnsupportedRegimeError(
            f"Phi is only known on the cones (2k_c+1)|y| <= |x| (or mirrored) for beta={beta}; "
            "pass --oracle N for a conjectural estimate"
        )
    row = {"x": _num(x), "y": _num(y), "beta": _num(beta), "phi": _num(value), "source": source,
           "conjectural": conjectural}
    if error_bound is not None:
        row["error_bound"] = _num(error_bound)
    if args.format == "json":
        return _dump_json(row)
    header = ("x", "y", "beta", "phi", "source", "conjectural", "error_bound")
    eb = "" if error_bound is None else render.fmt(error_bound)
    return render.csv_table(header, [(float(x), float(y), float(beta), float(value), source,
                                      "conjectural" if conjectural else "exact", eb)])


def cmd_ball(args) -> str:
    beta = _beta(args)
    ball = homog.unit_ball(beta)
    if args.format == "csv":
        return ball.to_csv()
    if args.format == "json":
        return _dump_json({
            "beta": _num(beta),
            "coverage": ball.coverage,
            "vertices": [[_num(x), _num(y)] for x, y in ball.vertices],
            "faces": ball.faces,
            "corners": ball.corners,
        })
    return render.ball_svg(ball)


def cmd_verify(args) -> str:
    results = verify.run_all()
    report = "\n".join(r.line() for r in results) + "\n"
    if not all(r.passed for r in results):
        raise _VerifyFailed(report)
    return report


class _VerifyFailed(Exception):
    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chessgeo", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--beta", type=float, help="refractive index of the dark squares")
    common.add_argument("--format", choices=("csv", "json", "svg"), help="output format")
    common.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("betac", parents=[common], help="critical indices beta_c(k)")
    p.add_argument("--max-k", type=int, default=7)
    p.set_defaults(func=cmd_betac, default_format="csv")

    p = sub.add_parser("normlen", parents=[common], help="sample l(t, beta)")
    p.add_argument("beta_pos", nargs="?", type=float, metavar="beta")
    p.add_argument("--t-max", type=float, default=12.0)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_normlen, default_format="csv")

    p = sub.add_parser("delta", parents=[common], help="increments delta(k, beta)")
    p.add_argument("beta_pos", nargs="?", type=float, metavar="beta")
    p.add_argument("--max-k", type=int, default=10)
    p.set_defaults(func=cmd_delta, default_format="csv")

    p = sub.add_parser("kc", parents=[common], help="critical index k_c(beta)")
    p.add_argument("beta_pos", nargs="?", type=float, metavar="beta")
    p.set_defaults(func=cmd_kc, default_format="csv")

    p = sub.add_parser("geodesic", parents=[common], help="geodesic to the light vertex (2n+j, j)")
    p.add_argument("n", type=int)
    p.add_argument("j", type=int)
    p.add_argument("beta_pos", nargs="?", type=float, metavar="beta")
    p.add_argument("--oracle", type=int, metavar="N", help="use the shortest-path oracle with N nodes per side")
    p.set_defaults(func=cmd_geodesic, default_format="json")

    p = sub.add_parser("phi", parents=[common], help="homogenized metric Phi_beta(x, y)")
    p.add_argument("x", type=float)
    p.add_argument("y", type=float)
    p.add_argument("beta_pos", nargs="?", type=float, metavar="beta")
    p.add_argument("--oracle", type=int, metavar="N", help="estimate with the oracle at N nodes per side")
    p.add_argument("--scale", type=int, default=DEFAULT_SCALE, metavar="S")
    p.set_defaults(func=cmd_phi, default_format="json")

    p = sub.add_parser("ball", parents=[common], help="unit ball polygon of Phi_beta")
    p.add_argument("beta_pos", nargs="?", type=float, metavar="beta")
    p.set_defaults(func=cmd_ball, default_format="svg")

    p = sub.add_parser("verify", help="run the numerical acceptance checks")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_verify, default_format=None, format=None)
    return parser


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "format", None) is None:
        args.format = args.default_format
    try:
        _emit(args.func(args), args.out)
    except _VerifyFailed as exc:
        _emit(exc.report, args.out)
        return EXIT_VERIFY
    except UnsupportedRegimeError as exc:
        msg = str(exc)
        if "--oracle" not in msg:
            msg += "; pass --oracle N to use the shortest-path oracle"
        print(f"chessgeo: {msg}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, CliError, OracleResourceError) as exc:
        print(f"chessgeo: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"chessgeo: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
