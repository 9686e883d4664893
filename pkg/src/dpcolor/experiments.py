"""Desk-scale pipelines for the two coloring results.

``run_ren``  dense random graph G(n, 1-p): richness parameters from the
             random-graph growth profile, a spot check of the growth bound
             on random vertex subsets, then a solve at the derived list size.
``run_lbcom`` complete graph K_n with random ell-assignments: success rate
             of the exact solver across a sweep of list sizes, plus the
             independence number of a random plausible cover set.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .concentration import a_threshold, g_p_value
from .correspondence import build_cover_graph, random_assignment
from .errors import ParameterError
from .graph import complete_graph, induced_subgraph, random_graph
from .iscount import count_profile, count_total
from .parallel import map_ordered
from .richness import max_verified_b, mp, randomgraph_profile, s_delta, verify_obsver
from .rng import derive, np_rng
from .solver import BUDGET, COLORED, DEFAULT_NODE_BUDGET, decide_colorable, ell_for, lll_color

REN_MAX_N = 64
LBCOM_MAX_N = 24
LBCOM_ELLS = (1, 2, 3, 4, 6, 8, 12, 16)


def _num(x):
    return mp.nstr(mp.mpf(x), 17)


def _solve(g, ca, seed, budget, cap):
    res = lll_color(g, ca, seed=seed, cap=cap)
    method = "lll"
    if res.status != COLORED:
        res = decide_colorable(g, ca, budget)
        method = "backtrack"
    return {"status": res.status, "method": method}


def run_ren(n: int, p, seed: int, subsets: int = 20, delta0: int = 1,
            budget: int = DEFAULT_NODE_BUDGET, cap=None) -> tuple[dict, list[dict]]:
    """Dense random-graph pipeline. ``p`` is the NON-edge probability.

    Returns ``(summary, rows)`` where rows are the subset spot checks.
    """
    if n > REN_MAX_N:
        raise ParameterError(f"n must be <= {REN_MAX_N} for solver attempts, got {n}")
    if not 0 < p < 1:
        raise ParameterError(f"nonedge probability must lie in (0, 1), got {p}")
    q = float(1 - Fraction(p)) if isinstance(p, Fraction) else 1.0 - float(p)
    g = random_graph(n, q, derive(seed, 0))
    delta = g.max_degree
    profile = randomgraph_profile(p)
    sd = s_delta(profile, delta) if delta >= 1 else 1
    b = profile.b_formula(delta) if delta >= 1 else 0
    report = verify_obsver(profile, delta, b) if delta >= 1 else None

    rng = np_rng(derive(seed, 1))
    rows = []
    lo = min(sd, n)
    for k in range(subsets):
        size = int(rng.integers(lo, n + 1))
        verts = sorted(int(v) for v in rng.choice(n, size=size, replace=False))
        total = count_total(induced_subgraph(g, verts))
        bound = g_p_value(size, p)
        rows.append({"sample": k, "size": size, "total": total,
                     "g_p": _num(bound), "exceeds": bool(total > bound)})

    ell = ell_for(delta, max(b, 1), delta0)
    main = _solve(g, random_assignment(g, ell, derive(seed, 2)), derive(seed, 3), budget, cap)
    ceiling = _solve(g, random_assignment(g, n, derive(seed, 4)), derive(seed, 5), budget, cap)
    summary = {
        "experiment": "ren",
        "config": {"n": n, "nonedge_p": str(p), "edge_prob": q, "seed": seed,
                   "subsets": subsets, "delta0": delta0, "budget": budget, "cap": cap},
        "edges": g.num_edges,
        "delta": delta,
        "s_delta": sd,
        "b": b,
        "max_verified_b": max_verified_b(profile, delta) if delta >= 1 else 0,
        "verifier": report.to_dict() if report else None,
        "subsets_all_exceed": all(r["exceeds"] for r in rows),
        "ell": ell,
        "solve": main,
        "ceiling_ell": n,
        "ceiling_solve": ceiling,
    }
    return summary, rows


def lbcom_ells(n: int, c_values) -> list[int]:
    """ell = max(1, ceil(c * n / ln n)) for each c."""
    return [max(1, math.ceil(c * n / math.log(n))) for c in c_values]


def _lbcom_trial(args):
    n, ell, trial, seed, budget = args
    g = complete_graph(n)
    ca = random_assignment(g, ell, derive(seed, 0))
    res = decide_colorable(g, ca, budget)
    # one cover node per base vertex: a plausible set of size n
    cg = build_cover_graph(ca)
    colors = np_rng(derive(seed, 1)).integers(1, ell + 1, size=n)
    nodes = [cg.node_index((v, int(colors[v]))) for v in range(n)]
    alpha = count_profile(induced_subgraph(cg.graph, nodes)).alpha
    return {"ell": ell, "trial": trial, "seed": seed, "status": res.status,
            "nodes": res.stats["nodes"], "plausible_size": n, "plausible_alpha": alpha}


def run_lbcom(n: int, trials: int, seed: int, ells=LBCOM_ELLS,
              budget: int = DEFAULT_NODE_BUDGET, threads: int = 1) -> tuple[dict, list[dict]]:
    """Success fraction of the exact solver on K_n across list sizes."""
    if n > LBCOM_MAX_N:
        raise ParameterError(f"n must be <= {LBCOM_MAX_N} for exact solving, got {n}")
    if n < 2:
        raise ParameterError("n must be >= 2")
    jobs = [(n, ell, i, derive(seed, ell, i), budget) for ell in ells for i in range(trials)]
    rows = map_ordered(_lbcom_trial, jobs, threads)
    thr = a_threshold(n, n)
    per_ell = []
    for ell in ells:
        mine = [r for r in rows if r["ell"] == ell]
        done = [r for r in mine if r["status"] != BUDGET]
        ok = sum(1 for r in done if r["status"] == COLORED)
        per_ell.append({
            "ell": ell,
            "conclusive": len(done),
            "inconclusive": len(mine) - len(done),
            "colored": ok,
            "success_fraction": ok / len(done) if done else None,
            "mean_plausible_alpha": sum(r["plausible_alpha"] for r in mine) / len(mine),
            "plausible_alpha_above_A": sum(1 for r in mine if r["plausible_alpha"] > thr),
        })
    summary = {
        "experiment": "lbcom",
        "config": {"n": n, "trials": trials, "seed": seed, "ells": list(ells), "budget": budget},
        "A_threshold": _num(thr),
        "results": per_ell,
    }
    return summary, rows
