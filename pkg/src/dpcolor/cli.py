"""``dpcolor`` command-line entry point.

Probability flags are explicit about the convention:
``--edge-prob q`` is the probability that a pair IS an edge, and
``--nonedge-p p`` the probability that it is NOT (so q = 1 - p).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import concentration, experiments
from .correspondence import CorrespondenceAssignment, from_lists, random_assignment
from .errors import DPColorError
from .graph import Graph, random_graph
from .iscount import count_profile
from .parallel import resolve_threads
from .richness import (
    builtin_profiles,
    check_is_rich_exact,
    max_verified_b,
    mp,
    s_delta,
    verify_obsver,
)
from .solver import (
    COLORED,
    SolveResult,
    decide_colorable,
    greedy_extend,
    lll_color,
)


def _prob(text: str):
    """Parse '1/2', '0.5' or '1e-3'; rationals stay exact."""
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a probability: {text!r}") from None


def _real(text: str):
    try:
        return Fraction(text) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _delta(text: str):
    """Max degree: integer, 'a^b' power, or 'e^x'."""
    if "^" in text:
        base, exp = text.split("^", 1)
        if base == "e":
            return mp.e ** mp.mpf(exp)
        return int(base) ** int(exp)
    try:
        return int(text)
    except ValueError:
        return mp.mpf(text)


def _atomic_write(path: str, text: str):
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_text(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: r[k] for k in columns})
    return buf.getvalue()


def _emit(args, text: str, default_name: str | None = None):
    if args.out:
        path = args.out
        if default_name and (os.path.isdir(path) or path.endswith(os.sep)):
            path = os.path.join(path, default_name)
        _atomic_write(path, text)
    else:
        sys.stdout.write(text)


def _emit_experiment(args, summary: dict, rows, columns):
    if args.out:
        _atomic_write(os.path.join(args.out, "summary.json"), _dump_json(summary))
        _atomic_write(os.path.join(args.out, "trials.csv"), _csv_text(rows, columns))
    else:
        sys.stdout.write(_dump_json(summary))


# ------------------------------------------------------------------ commands


def cmd_gen(args):
    if args.edge_prob is not None:
        q = float(args.edge_prob)
    else:
        q = float(1 - Fraction(args.nonedge_p)) if isinstance(args.nonedge_p, Fraction) \
            else 1.0 - args.nonedge_p
    g = random_graph(args.n, q, args.seed)
    _emit(args, g.to_json() + "\n")


def cmd_count(args):
    g = Graph.load(args.graph)
    _emit(args, _dump_json(count_profile(g).to_dict()))


def cmd_richness(args):
    if args.graph:
        if args.b is None:
            raise DPColorError("--b is required when checking a graph file")
        g = Graph.load(args.graph)
        report = check_is_rich_exact(g, args.b, args.delta, args.max_violations)
        _emit(args, _dump_json(report.to_dict()))
        return
    if args.profile is None or args.delta is None:
        raise DPColorError("give a graph file, or --profile with --delta")
    profiles = builtin_profiles(r=args.r, p=args.p)
    prof = profiles[args.profile]
    if args.profile == "trianglefree":
        out = {"profile": "trianglefree", "b": prof.b_formula(args.delta), "note": prof.note}
    else:
        b = args.b if args.b is not None else max_verified_b(prof, args.delta)
        out = {
            "profile": prof.name,
            "params": {k: str(v) for k, v in prof.params.items()},
            "delta": mp.nstr(mp.mpf(args.delta), 17) if not isinstance(args.delta, int)
            else str(args.delta),
            "s_delta": s_delta(prof, args.delta),
            "b_formula": prof.b_formula(args.delta),
            "max_verified_b": max_verified_b(prof, args.delta),
            "report": verify_obsver(prof, args.delta, int(b)).to_dict(),
        }
    _emit(args, _dump_json(out))


def cmd_assign(args):
    g = Graph.load(args.graph)
    if args.mode == "random":
        ca = random_assignment(g, args.ell, args.seed)
    else:
        ca = from_lists(g, [range(1, args.ell + 1)] * g.n)
    _emit(args, ca.to_json() + "\n")


def cmd_solve(args):
    g = Graph.load(args.graph)
    ca = CorrespondenceAssignment.load(g, args.assignment)
    if args.method == "backtrack":
        res = decide_colorable(g, ca, args.budget)
    elif args.method == "lll":
        res = lll_color(g, ca, seed=args.seed, cap=args.cap)
    else:
        phi = greedy_extend(g, ca, {}, range(g.n))
        status = COLORED if len(phi) == g.n else "partial"
        res = SolveResult(status, phi if status == COLORED else None,
                          {"colored_vertices": len(phi)})
    _emit(args, _dump_json(res.to_dict()))


def cmd_exp(args):
    threads = resolve_threads(args.threads)
    if args.experiment == "conc":
        rep = concentration.run_concentration_experiment(
            args.s, args.t, args.nonedge_p, args.trials, args.seed, threads=threads)
        _emit_experiment(args, rep.to_dict(), rep.rows, ["trial", "seed", "count"])
    elif args.experiment == "alpha":
        p = args.edge_p if args.edge_p is not None else float(args.n) ** (-13 / 14)
        rep = concentration.run_alpha_experiment(
            args.s, args.n, p, args.trials, args.seed,
            enforce_hypothesis=not args.no_hypothesis_check, threads=threads)
        _emit_experiment(args, rep.to_dict(), rep.rows, ["trial", "seed", "alpha"])
    elif args.experiment == "ren":
        summary, rows = experiments.run_ren(
            args.n, args.nonedge_p, args.seed, subsets=args.subsets,
            delta0=args.delta0, budget=args.budget)
        _emit_experiment(args, summary, rows, ["sample", "size", "total", "g_p", "exceeds"])
    elif args.experiment == "lbcom":
        if args.c_values:
            ells = experiments.lbcom_ells(args.n, args.c_values)
        else:
            ells = args.ells or list(experiments.LBCOM_ELLS)
        summary, rows = experiments.run_lbcom(
            args.n, args.trials, args.seed, ells=ells, budget=args.budget, threads=threads)
        _emit_experiment(args, summary, rows,
                         ["ell", "trial", "seed", "status", "nodes",
                          "plausible_size", "plausible_alpha"])


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpcolor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="random graph G(n, q) to JSON")
    p.add_argument("--n", type=int, required=True)
    prob = p.add_mutually_exclusive_group(required=True)
    prob.add_argument("--edge-prob", type=_prob, help="probability q that a pair is an edge")
    prob.add_argument("--nonedge-p", type=_prob, help="probability p that a pair is NOT an edge (q = 1 - p)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("count", help="independent-set profile of a graph file")
    p.add_argument("graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("richness", help="exact IS-richness check or growth-profile verifier")
    p.add_argument("graph", nargs="?")
    p.add_argument("--b", type=_real)
    p.add_argument("--delta", type=_delta, help="max degree; accepts 2^60 or e^9 forms")
    p.add_argument("--max-violations", type=int, default=1000)
    p.add_argument("--profile", choices=["trianglefree", "colorable", "clique", "randomgraph"])
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--p", type=_prob, default=Fraction(1, 2),
                   help="NON-edge probability for the randomgraph profile")
    p.add_argument("--out")
    p.set_defaults(func=cmd_richness)

    p = sub.add_parser("assign", help="correspondence assignment for a graph file")
    p.add_argument("graph")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--mode", choices=["random", "lists"], default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_assign)

    p = sub.add_parser("solve", help="color a graph from an assignment")
    p.add_argument("graph")
    p.add_argument("assignment")
    p.add_argument("--method", choices=["backtrack", "lll", "greedy"], default="backtrack")
    p.add_argument("--budget", type=int, default=10 ** 7, help="node limit for backtracking")
    p.add_argument("--cap", type=int, help="resample-round limit for lll")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exp", help="seeded experiments; --out DIR gets summary.json + trials.csv")
    p.add_argument("experiment", choices=["ren", "lbcom", "conc", "alpha"])
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--s", type=int, default=55)
    p.add_argument("--t", type=int, default=5)
    p.add_argument("--nonedge-p", type=_prob, default=Fraction(1, 2),
                   help="NON-edge probability p; graphs are G(., 1-p) (ren, conc)")
    p.add_argument("--edge-p", type=_prob,
                   help="EDGE probability for alpha (default n^(-13/14))")
    p.add_argument("--no-hypothesis-check", action="store_true")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--ells", type=int, nargs="+")
    p.add_argument("--c-values", type=float, nargs="+",
                   help="lbcom sweep: ell = max(1, ceil(c n / ln n))")
    p.add_argument("--subsets", type=int, default=20)
    p.add_argument("--delta0", type=int, default=1)
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, help="worker processes (env DPCOLOR_THREADS)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_exp)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (DPColorError, OSError) as exc:
        print(f"dpcolor: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
