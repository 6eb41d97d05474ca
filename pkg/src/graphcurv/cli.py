"""Command-line front end.

Exit codes: 0 success, 1 other failure, 2 invalid or malformed graph,
3 degenerate direction, 64 bad usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import generators, io
from .curvature import total_curvature
from .estimators import RejectionError, estimate
from .graph import GraphError
from .morse import DegenerateDirectionError, analyze_direction
from .tightness import verdict
from .topology import (LinkingError, NotASuspension, cycle_basis, cycle_from_edges,
                       gauss_linking_number, linking_number, unknot_certificate)

EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_DEGENERATE = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text, count=None):
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} numbers, got {len(vals)}")
    return vals


def _vector(text):
    return _floats(text, 3)


def _pair(text):
    vals = _floats(text, 2)
    if any(v != int(v) or v < 0 for v in vals):
        raise argparse.ArgumentTypeError("cycle indices must be non-negative integers")
    return [int(v) for v in vals]


def _edge_cycles(text):
    parts = [p for p in text.split(";") if p.strip()]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected two edge lists separated by ';'")
    return [[int(x) for x in _floats(p)] for p in parts]


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser():
    p = _Parser(prog="graphcurv", description="Curvature of piecewise-linear spatial graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a catalog graph")
    g.add_argument("family", choices=generators.FAMILIES)
    g.add_argument("-o", "--output", help="output file (default: stdout)")
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int, help="segments per smooth arc")
    g.add_argument("--variant")
    g.add_argument("--word", help="braid word such as 1,-2")
    g.add_argument("--eps", type=float)
    g.add_argument("--slope", type=float)
    g.add_argument("--a", type=float)
    g.add_argument("--b", type=float)
    g.add_argument("--turns", type=float)
    g.add_argument("--segments", type=int)
    g.add_argument("--radius", type=float)
    g.add_argument("--chords", type=_floats, help="x positions of vertical chords")

    c = sub.add_parser("curvature", help="closed-form curvature report")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")

    m = sub.add_parser("morse", help="Morse analysis for one direction")
    m.add_argument("file")
    m.add_argument("--dir", type=_vector, required=True, metavar="X,Y,Z")

    s = sub.add_parser("scan", help="Monte Carlo estimates")
    s.add_argument("file")
    s.add_argument("--samples", type=_positive, default=20_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--threads", type=_positive)

    t = sub.add_parser("tightness", help="tightness verdict")
    t.add_argument("file")
    t.add_argument("--probes", type=_positive, default=10_000)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--threads", type=_positive)

    k = sub.add_parser("link", help="linking number of two cycles")
    k.add_argument("file")
    grp = k.add_mutually_exclusive_group(required=True)
    grp.add_argument("--cycles", type=_pair, metavar="I,J", help="indices into the cycle basis")
    grp.add_argument("--edge-cycles", type=_edge_cycles, metavar="E,..;E,..",
                     help="two cycles given by their edge ids")
    k.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("report", help="combined summary")
    r.add_argument("file")
    r.add_argument("--samples", type=_positive, default=20_000)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--threads", type=_positive)
    return p


def _threads(args):
    env = os.environ.get("GRAPHCURV_THREADS")
    if env:
        return max(1, int(env))
    return getattr(args, "threads", None)


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2))
    out.write("\n")


def _cmd_generate(args, out):
    params = {k: getattr(args, k) for k in ("n", "m", "variant", "word", "eps", "slope", "a",
                                             "b", "turns", "segments", "radius", "chords")}
    g = generators.make_family(args.family, **params)
    if args.output:
        io.save_graph(g, args.output)
    else:
        out.write(io.dumps(g, indent=1) + "\n")


def _cmd_curvature(args, out):
    rep = total_curvature(io.load_graph(args.file))
    if args.json:
        _emit(rep.to_json(), out)
        return
    out.write(f"K_total={rep.K_total!r}\n")
    out.write(f"crookedness_mu={rep.crookedness_mu!r}\n")
    out.write(f"taniyama_T1_over_pi={rep.taniyama_T1_over_pi!r}\n")
    out.write(f"chi={rep.chi}\nb1={rep.b1}\ntight={str(rep.tight).lower()}\n")


def _cmd_morse(args, out):
    _emit(analyze_direction(io.load_graph(args.file), args.dir).to_json(), out)


def _cmd_scan(args, out):
    rep = estimate(io.load_graph(args.file), args.samples, args.seed, _threads(args))
    _emit(rep.to_json(), out)


def _cmd_tightness(args, out):
    _emit(verdict(io.load_graph(args.file), args.probes, args.seed).to_json(), out)


def _cmd_link(args, out):
    g = io.load_graph(args.file)
    if args.cycles is not None:
        basis = cycle_basis(g)
        i, j = args.cycles
        if max(i, j) >= len(basis):
            raise GraphError(f"the cycle basis has only {len(basis)} cycles")
        a, b = basis[i], basis[j]
    else:
        a, b = (cycle_from_edges(g, ids) for ids in args.edge_cycles)
    lk = linking_number(a, b, seed=args.seed)
    _emit({"linking_number": lk, "gauss_estimate": gauss_linking_number(a, b),
           "cycle_a": [list(x) for x in a.edges], "cycle_b": [list(x) for x in b.edges]}, out)


def _cmd_report(args, out):
    g = io.load_graph(args.file)
    rep = total_curvature(g)
    est = estimate(g, args.samples, args.seed, _threads(args))
    try:
        unknot = unknot_certificate(g, args.samples, args.seed).to_json()
    except NotASuspension:
        unknot = None
    doc = {
        "curvature": rep.to_json(),
        "chern_lashof_gap": rep.gap,
        "estimate": est.to_json(),
        "unknot": unknot,
    }
    out.write(f"K = {rep.K_total:.12g}   1 + b1 = {1 + rep.b1}   gap = {rep.gap:.6g}\n")
    out.write(f"mu = {rep.crookedness_mu:.12g}   mu_hat = {est.mu_hat:.6g}"
              f" +- {est.std_errors['mu_hat']:.2g}\n")
    out.write(f"tight = {str(rep.tight).lower()}\n")
    _emit(doc, out)


COMMANDS = {
    "generate": _cmd_generate,
    "curvature": _cmd_curvature,
    "morse": _cmd_morse,
    "scan": _cmd_scan,
    "tightness": _cmd_tightness,
    "link": _cmd_link,
    "report": _cmd_report,
}


def run(argv=None, out=None):
    """Run one command and return its exit code."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args, out)
    except DegenerateDirectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (LinkingError, RejectionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
