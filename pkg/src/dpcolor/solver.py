"""Deciding (L, M)-colorability and the randomized neighborhood-resampling
process used to build colorings constructively.

``decide_colorable`` is exact. ``lll_color`` is a Moser-Tardos style
heuristic: it resamples around vertices whose bad event holds until none
remain and then finishes greedily. Its termination is not guaranteed, so
it reports ``budget-exceeded`` rather than ever claiming ``unsat``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .correspondence import (
    CorrespondenceAssignment,
    available_colors,
    invert_perms,
    relabel_coloring,
    relabel_towards,
    usable,
    validate,
)
from .errors import ParameterError
from .graph import Graph
from .iscount import IndependentSetSampler, enumerate_independent_sets
from .rng import derive, np_rng, py_rng

COLORED = "colored"
UNSAT = "unsat"
BUDGET = "budget-exceeded"

DEFAULT_NODE_BUDGET = 10 ** 7


@dataclass
class SolveResult:
    status: str
    coloring: dict | None = None
    stats: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = False) -> dict:
        stats = {k: v for k, v in self.stats.items() if timing or k != "wall_time"}
        if "partial" in stats:
            stats["partial"] = {str(v): c for v, c in sorted(stats["partial"].items())}
        return {
            "status": self.status,
            "coloring": None if self.coloring is None
            else [self.coloring[v] for v in range(len(self.coloring))],
            "stats": stats,
        }


def _checked(ca, result: SolveResult) -> SolveResult:
    if result.status == COLORED:
        assert len(result.coloring) == ca.base.n and validate(ca, result.coloring).ok
    return result


# ------------------------------------------------------------ exact search


def decide_colorable(g: Graph, ca: CorrespondenceAssignment,
                     budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Backtracking with forward checking.

    Branches on the uncolored vertex with the fewest remaining colors
    (lowest index on ties), trying colors in ascending order. Assigning
    ``(v, c)`` removes the partner of ``c`` from every uncolored neighbor's
    domain; an emptied domain prunes the branch.
    """
    if ca.base != g:
        raise ParameterError("assignment was built for a different graph")
    start = time.perf_counter()
    n = g.n
    domains = [set(lst) for lst in ca.lists]
    nbrs = [g.neighbors(v) for v in range(n)]
    phi: dict[int, int] = {}
    nodes = 0

    class _Budget(Exception):
        pass

    def search() -> bool:
        nonlocal nodes
        if len(phi) == n:
            return True
        v = min((w for w in range(n) if w not in phi), key=lambda w: (len(domains[w]), w))
        for c in sorted(domains[v]):
            nodes += 1
            if nodes > budget:
                raise _Budget
            removed = []
            dead = False
            for w in nbrs[v]:
                if w in phi:
                    continue
                cw = ca.partner(v, c, w)
                if cw is not None and cw in domains[w]:
                    domains[w].discard(cw)
                    removed.append((w, cw))
                    if not domains[w]:
                        dead = True
                        break
            if not dead:
                phi[v] = c
                if search():
                    return True
                del phi[v]
            for w, cw in removed:
                domains[w].add(cw)
        return False

    try:
        found = search()
    except _Budget:
        return SolveResult(BUDGET, None, {"nodes": nodes, "wall_time": time.perf_counter() - start})
    stats = {"nodes": nodes, "wall_time": time.perf_counter() - start}
    if found:
        return _checked(ca, SolveResult(COLORED, dict(sorted(phi.items())), stats))
    return SolveResult(UNSAT, None, stats)


# ---------------------------------------------------------------- greedy


def greedy_extend(g: Graph, ca: CorrespondenceAssignment, phi: dict, order) -> dict:
    """Give each uncolored vertex in ``order`` its smallest available color.

    Vertices with nothing available are skipped; colored ones never change.
    """
    out = dict(phi)
    for v in order:
        if v in out:
            continue
        avail = available_colors(ca, out, v)
        if avail:
            out[v] = avail[0]
    return out


# ------------------------------------------------------------ bad events


def event_threshold(delta) -> int:
    """``ceil(delta ** (7/12))``; for integer delta, the least k with k^12 >= delta^7."""
    if isinstance(delta, int):
        if delta < 0:
            raise ParameterError("delta must be nonnegative")
        target = delta ** 7
        k = max(0, int(round(delta ** (7 / 12))) - 2)
        while k ** 12 < target:
            k += 1
        return k
    return math.ceil(delta ** (7 / 12))


def event_Au(g, ca, phi, u, delta) -> bool:
    """``u`` uncolored with fewer than delta^(7/12) available colors."""
    if u in phi:
        return False
    return len(available_colors(ca, phi, u)) < event_threshold(delta)


def event_BS(g, ca, phi, S, delta) -> bool:
    """Every vertex of ``S`` is uncolored and has its A-event false."""
    return all(x not in phi and not event_Au(g, ca, phi, x, delta) for x in S)


def event_Bu(g, ca, phi, u, delta) -> bool:
    """At least delta^(7/12) neighbors of ``u`` are uncolored with A false."""
    good = sum(1 for x in g.neighbors(u)
               if x not in phi and not event_Au(g, ca, phi, x, delta))
    return good >= event_threshold(delta)


# ---------------------------------------------------------- resampling


def _stage(view, phi, u, c, nbrs):
    """One color stage: uncolor ``R_c`` vertices holding ``c``, then collect
    the uncolored ``R_c`` vertices at which ``c`` is usable.

    Returns the intermediate coloring, the candidate vertices and the cover
    subgraph ``F_c`` on ``{(v, c)}`` (as a graph over candidate positions).
    """
    reach = [v for v in nbrs if view.partner(u, c, v) == c]
    mid = {v: col for v, col in phi.items() if not (col == c and v in reach)}
    cand = [v for v in reach if v not in mid and c in view.lists[v] and usable(view, mid, v, c)]
    edges = []
    for i, v in enumerate(cand):
        for j in range(i + 1, len(cand)):
            w = cand[j]
            if view.base.adjacent(v, w) and view.partner(v, c, w) == c:
                edges.append((i, j))
    return mid, cand, Graph.from_edges(len(cand), edges)


def _prepare(ca, phi, u):
    if u in phi:
        raise ParameterError(f"vertex {u} must be uncolored before resampling")
    view, perms = relabel_towards(ca, u)
    return view, perms, relabel_coloring(phi, perms), sorted(ca.base.neighbors(u))


def resample_neighborhood(g, ca, phi, u, seed) -> dict:
    """Redraw the colors on ``N(u)`` one color of ``u`` at a time.

    Colors are renamed so that ``(u, c)`` can only be matched to ``(v, c)``.
    For each ``c`` in ``L(u)``: vertices matched to ``(u, c)`` that hold
    ``c`` are uncolored, then a uniformly random independent set of ``F_c``
    is colored ``c``. A uniformly random valid partial coloring with ``u``
    uncolored stays uniformly distributed.
    """
    view, perms, cur, nbrs = _prepare(ca, phi, u)
    for c in view.lists[u]:
        mid, cand, fc = _stage(view, cur, u, c, nbrs)
        chosen = IndependentSetSampler(fc).sample(py_rng(derive(seed, c)))
        for i in chosen:
            mid[cand[i]] = c
        cur = mid
    out = relabel_coloring(cur, invert_perms(perms))
    return dict(sorted(out.items()))


def resample_kernel(g, ca, phi, u) -> dict:
    """Exact outcome distribution of :func:`resample_neighborhood`.

    Keys are colorings as sorted item tuples, values are ``Fraction``s.
    Enumerates every independent set of each ``F_c`` instead of sampling.
    """
    view, perms, start, nbrs = _prepare(ca, phi, u)
    dist = {tuple(sorted(start.items())): Fraction(1)}
    for c in view.lists[u]:
        nxt: dict = {}
        for key, prob in dist.items():
            mid, cand, fc = _stage(view, dict(key), u, c, nbrs)
            sets = enumerate_independent_sets(fc)
            share = prob / len(sets)
            for s in sets:
                out = dict(mid)
                for i in s:
                    out[cand[i]] = c
                k = tuple(sorted(out.items()))
                nxt[k] = nxt.get(k, 0) + share
        dist = nxt
    inv = invert_perms(perms)
    return {tuple(sorted(relabel_coloring(dict(k), inv).items())): p for k, p in dist.items()}


# ------------------------------------------------------------ LLL driver


def default_cap(g: Graph) -> int:
    return 2 * g.n * g.max_degree ** 3


def _greedy_finish(g, ca, phi):
    pending = [v for v in range(g.n) if v not in phi]
    pending.sort(key=lambda v: (len(available_colors(ca, phi, v)), v))
    return greedy_extend(g, ca, phi, pending)


def lll_color(g, ca, delta=None, seed=0, cap=None) -> SolveResult:
    """Constructive coloring via repeated neighborhood resampling.

    1. Seeded greedy pass in a random vertex order.
    2. While the lowest-index vertex with ``A_u`` or ``B_u`` exists, resample
       around it (a colored ``u`` with ``B_u`` is uncolored first).
    3. With no bad events left, extend greedily in order of increasing
       availability; stop on a full coloring, else keep resampling.

    After every resample a greedy completion is also attempted on a copy;
    at small delta the A-event threshold is so low that step 3 may never
    be reached otherwise.
    """
    start = time.perf_counter()
    if delta is None:
        delta = g.max_degree
    if cap is None:
        cap = default_cap(g)
    order = [int(v) for v in np_rng(derive(seed, 0)).permutation(g.n)]
    phi = greedy_extend(g, ca, {}, order)
    rounds = 0
    while True:
        if len(phi) == g.n:
            stats = {"rounds": rounds, "wall_time": time.perf_counter() - start}
            return _checked(ca, SolveResult(COLORED, dict(sorted(phi.items())), stats))
        bad = next((v for v in range(g.n)
                    if event_Au(g, ca, phi, v, delta) or event_Bu(g, ca, phi, v, delta)), None)
        trial = _greedy_finish(g, ca, phi)
        if bad is None or len(trial) == g.n:
            phi = trial
            if len(phi) == g.n:
                continue
            bad = next(v for v in range(g.n) if v not in phi)
        if rounds >= cap:
            stats = {"rounds": rounds, "partial": dict(phi),
                     "wall_time": time.perf_counter() - start}
            return SolveResult(BUDGET, None, stats)
        rounds += 1
        phi.pop(bad, None)
        phi = resample_neighborhood(g, ca, phi, bad, derive(seed, 1, rounds))


# ---------------------------------------------------------- list sizes


def _ceil_real(x) -> int:
    if isinstance(x, Rational):
        return math.ceil(Fraction(x.numerator, x.denominator))
    return math.ceil(x)


def ell_for(delta, b, delta0: int = 1) -> int:
    """``max(delta0, 2 * ceil(5 * delta / (2 * b)))``."""
    if b <= 0:
        raise ParameterError(f"b must be positive, got {b}")
    if isinstance(b, (int, Fraction)) and isinstance(delta, (int, Fraction)):
        x = Fraction(5) * delta / (2 * Fraction(b))
    else:
        x = 5 * delta / (2 * b)
    return max(delta0, 2 * _ceil_real(x))


COMPLETE_GAMMA = 21


def ell_for_complete(n: int, delta0: int = 1) -> int:
    """List size for K_n with b(n) = ln(n) / 21 and max degree n - 1."""
    if n < 2:
        raise ParameterError("K_n needs n >= 2 for a positive b(n)")
    return ell_for(n - 1, math.log(n) / COMPLETE_GAMMA, delta0)
