"""IS-richness: binomial prefix sums, b-largeness, exact checking, and the
analytic verifier that turns a growth bound ``I(F) >= g(|V(F)|)`` on
neighborhood subgraphs into a certified richness parameter ``b``.

Neighborhoods are open throughout: the subgraphs checked live inside
``N(v)``, never ``N[v]``.

Logarithms are natural unless a name says otherwise; the triangle-free
rule is the one formula stated in base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable

import mpmath
import numpy as np

from .errors import ParameterError, ProfileError, ResourceError
from .graph import Graph

MAX_NEIGHBORHOOD = 22
EXACT_CUTOFF = 10_000

mp = mpmath.MPContext()
mp.dps = 50
# inputs often arrive as doubles; snap values this close to an integer
_TOL = mp.mpf(10) ** -12


def to_mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def _floor(x) -> int:
    """Floor that forgives rounding just below an integer."""
    x = to_mpf(x)
    k = int(mp.nint(x))
    if abs(x - k) <= _TOL * max(1, abs(x)):
        return k
    return int(mp.floor(x))


def _floor_real(b) -> int:
    if isinstance(b, (int, Fraction)):
        return math.floor(b)
    if isinstance(b, float):
        return math.floor(b)
    return _floor(b)


def binom_le(n: int, b) -> int:
    """Number of subsets of an ``n``-set of size at most ``b`` (``b`` real)."""
    if n < 0 or b < 0:
        raise ParameterError(f"binom_le needs n >= 0 and b >= 0, got n={n}, b={b}")
    top = min(_floor_real(b), n)
    return sum(comb(n, i) for i in range(top + 1))


def _exceeds_cube_root(value: int, delta) -> bool:
    """``value > delta ** (1/3)`` decided by cubing."""
    cube = value ** 3
    if isinstance(delta, (int, Fraction)):
        return cube > delta
    if isinstance(delta, float):
        return cube > Fraction(delta)
    return mp.mpf(cube) > to_mpf(delta)


def is_b_large(s: int, b, delta) -> bool:
    """Whether an ``s``-vertex subgraph is b-large at maximum degree ``delta``."""
    if s < 0 or delta < 0:
        raise ParameterError("s and delta must be nonnegative")
    return _exceeds_cube_root(binom_le(s, b), delta)


# ---------------------------------------------------------------- exact check


@dataclass(frozen=True)
class Violation:
    center: int
    subset: tuple[int, ...]
    count: int
    threshold: int


@dataclass
class RichnessReport:
    b: float
    delta: int
    violations: list[Violation]
    violation_count: int
    checked_subsets: int

    @property
    def rich(self) -> bool:
        return self.violation_count == 0

    def to_dict(self) -> dict:
        return {
            "rich": self.rich,
            "b": float(self.b),
            "delta": self.delta,
            "checked_subsets": self.checked_subsets,
            "violation_count": self.violation_count,
            "violations": [
                {"center": x.center, "subset": list(x.subset),
                 "count": x.count, "threshold": x.threshold}
                for x in self.violations
            ],
        }


def _subset_counts(local_rows):
    """I(G[X]) for every subset X of a small graph, indexed by bitmask.

    Block ``[2^k, 2^(k+1))`` holds the sets whose top vertex is ``k``:
    ``I(X + k) = I(X) + I(X - N(k))``.
    """
    d = len(local_rows)
    counts = np.empty(1 << d, dtype=np.int64)
    sizes = np.empty(1 << d, dtype=np.int64)
    counts[0] = 1
    sizes[0] = 0
    for k in range(d):
        lo = 1 << k
        idx = np.arange(lo, dtype=np.int64)
        keep = ~np.int64(local_rows[k]) & (lo - 1)
        counts[lo:2 * lo] = counts[:lo] + counts[idx & keep]
        sizes[lo:2 * lo] = sizes[:lo] + 1
    return counts, sizes


def check_is_rich_exact(g: Graph, b, delta=None, max_violations: int = 1000) -> RichnessReport:
    """Check every b-large induced subgraph of every open neighborhood.

    Induced subgraphs suffice: deleting edges never decreases the number of
    independent sets, so a spanning subgraph of ``G[X]`` has at least
    ``I(G[X])`` of them while facing the same threshold.
    """
    if b < 0:
        raise ParameterError(f"b must be nonnegative, got {b}")
    if delta is None:
        delta = g.max_degree
    width = g.max_degree
    # the empty vertex set is not a subgraph
    large = [s > 0 and is_b_large(s, b, delta) for s in range(width + 1)]
    need = [2 * binom_le(s, b) for s in range(width + 1)]

    violations: list[Violation] = []
    n_viol = 0
    checked = 0
    for v in range(g.n):
        nb = g.neighbors(v)
        d = len(nb)
        if not any(large[:d + 1]):
            continue
        if d > MAX_NEIGHBORHOOD:
            raise ResourceError(
                f"vertex {v} has {d} neighbors; exact check budget is {MAX_NEIGHBORHOOD}")
        checked += sum(comb(d, s) for s in range(d + 1) if large[s])
        pos = {u: i for i, u in enumerate(nb)}
        local = [0] * d
        for i, u in enumerate(nb):
            for w in g.neighbors(u):
                j = pos.get(w)
                if j is not None:
                    local[i] |= 1 << j
        found: list[Violation] = []
        if not any(local):
            # edgeless neighborhood: I(G[X]) = 2^|X|
            for s in range(d + 1):
                if large[s] and (1 << s) < need[s]:
                    n_viol += comb(d, s)
                    for combo in combinations(nb, s):
                        if len(violations) + len(found) >= max_violations:
                            break
                        found.append(Violation(v, combo, 1 << s, need[s]))
        else:
            counts, sizes = _subset_counts(local)
            large_arr = np.array(large[:d + 1], dtype=bool)
            need_arr = np.array(need[:d + 1], dtype=np.int64)
            bad = large_arr[sizes] & (counts < need_arr[sizes])
            hits = np.flatnonzero(bad)
            n_viol += len(hits)
            for m in hits:
                m = int(m)
                subset = tuple(nb[i] for i in range(d) if (m >> i) & 1)
                found.append(Violation(v, subset, int(counts[m]), need[len(subset)]))
        found.sort(key=lambda x: x.subset)
        violations.extend(found[:max(0, max_violations - len(violations))])
    return RichnessReport(b, delta, violations, n_viol, checked)


# ----------------------------------------------------------- growth profiles


@dataclass(eq=False)
class GrowthProfile:
    """Lower bound ``g`` on ``I(F)`` for neighborhood subgraphs of size ``s``.

    ``log_g`` is the natural log of ``g`` for ``s > 0``; ``psi(s)`` is
    ``s * (log g)'(s)`` so the derivative condition reads ``psi(s) >= 2b``.
    """

    name: str
    params: dict
    log_g: Callable
    psi: Callable
    psi_nondecreasing: bool
    b_rule: Callable = field(repr=False)

    def g(self, s):
        if s == 0:
            return mp.mpf(0)
        return mp.exp(self.log_g(to_mpf(s)))

    def b_formula(self, delta) -> int:
        return self.b_rule(delta)


def _log_delta(delta):
    if delta < 1:
        raise ParameterError(f"delta must be >= 1, got {delta}")
    return mp.log(to_mpf(delta))


def s_delta(profile: GrowthProfile, delta) -> int:
    """Smallest integer ``s >= 1`` with ``g(s) >= delta ** (1/3)``.

    This is the ceiling of ``g^{-1}(delta^{1/3})`` for increasing ``g``;
    found by doubling then integer bisection in log space.
    """
    target = _log_delta(delta) / 3
    slack = _TOL * max(1, abs(target))

    def ok(s):
        return profile.log_g(mp.mpf(s)) >= target - slack

    if ok(1):
        return 1
    lo, hi = 1, 2
    prev = profile.log_g(mp.mpf(1))
    while not ok(hi):
        cur = profile.log_g(mp.mpf(hi))
        if cur <= prev:
            raise ProfileError(f"profile {profile.name} is not increasing on [{lo}, {hi}]")
        if hi > 1 << 400:
            raise ProfileError(f"profile {profile.name} does not reach delta^(1/3)")
        prev = cur
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def log_binomial(n: int, k: int):
    if k < 0 or k > n:
        return mp.ninf
    return mp.loggamma(n + 1) - mp.loggamma(k + 1) - mp.loggamma(n - k + 1)


GRID_POINTS = 600
GRID_SPAN = 10 ** 6
GRID_MARGIN = mp.mpf("1e-6")


@dataclass
class ObsVerReport:
    s_delta: int
    b: int
    cond_main: bool
    cond_tub: bool
    cond_der: bool
    main_lhs_log: object
    main_rhs_log: object
    tub_lhs: int
    tub_rhs: object
    der_lhs: object
    der_rhs: int
    der_grid_checked: bool
    main_exact: bool
    main_binomial: int | None = None

    @property
    def ok(self) -> bool:
        return self.cond_main and self.cond_tub and self.cond_der

    def to_dict(self) -> dict:
        return {
            "s_delta": self.s_delta,
            "b": self.b,
            "cond_main": self.cond_main,
            "cond_tub": self.cond_tub,
            "cond_der": self.cond_der,
            "ok": self.ok,
            "main_lhs_log": mp.nstr(self.main_lhs_log, 17),
            "main_rhs_log": mp.nstr(self.main_rhs_log, 17),
            "main_exact": self.main_exact,
            "main_binomial": None if self.main_binomial is None else str(self.main_binomial),
            "tub_lhs": self.tub_lhs,
            "tub_rhs": mp.nstr(self.tub_rhs, 17),
            "der_lhs": mp.nstr(self.der_lhs, 17),
            "der_rhs": self.der_rhs,
            "der_grid_checked": self.der_grid_checked,
        }


def verify_obsver(profile: GrowthProfile, delta, b: int) -> ObsVerReport:
    """Evaluate the three conditions certifying that ``b`` works at ``delta``.

    main: C(s_delta, b) <= delta^(1/3) / 4
    tub:  b <= s_delta / 3
    der:  psi(s) >= 2b for all s >= s_delta

    The main condition is decided with integers (``64 C^3 <= delta``) when
    ``delta`` is rational and ``s_delta`` is at most ``EXACT_CUTOFF``; the
    log-space values are reported either way.
    """
    if b < 0 or int(b) != b:
        raise ParameterError(f"b must be a nonnegative integer, got {b}")
    b = int(b)
    s = s_delta(profile, delta)
    lhs_log = log_binomial(s, b)
    rhs_log = _log_delta(delta) / 3 - mp.log(4)
    exact = isinstance(delta, (int, Fraction)) and s <= EXACT_CUTOFF
    binomial = None
    if exact:
        binomial = comb(s, b)
        cond_main = 64 * binomial ** 3 <= delta
    else:
        cond_main = bool(lhs_log <= rhs_log)
    cond_tub = 3 * b <= s
    if profile.psi_nondecreasing:
        der_lhs = profile.psi(mp.mpf(s))
        cond_der = bool(der_lhs >= 2 * b)
        grid = False
    else:
        ratio = mp.mpf(GRID_SPAN) ** (mp.mpf(1) / GRID_POINTS)
        der_lhs = min(profile.psi(s * ratio ** k) for k in range(GRID_POINTS + 1))
        cond_der = bool(der_lhs >= 2 * b * (1 + GRID_MARGIN))
        grid = True
    return ObsVerReport(
        s_delta=s, b=b, cond_main=bool(cond_main), cond_tub=cond_tub, cond_der=cond_der,
        main_lhs_log=lhs_log, main_rhs_log=rhs_log, tub_lhs=b, tub_rhs=mp.mpf(s) / 3,
        der_lhs=der_lhs, der_rhs=2 * b, der_grid_checked=grid,
        main_exact=exact, main_binomial=binomial,
    )


def max_verified_b(profile: GrowthProfile, delta) -> int:
    """Largest ``b`` passing :func:`verify_obsver`, scanning up from 0.

    Returns 0 when even ``b = 0`` fails; that value makes richness vacuous.
    """
    best = 0
    b = 0
    while verify_obsver(profile, delta, b).ok:
        best = b
        b += 1
    return best


# ---------------------------------------------------------- builtin profiles

LN2 = mp.log(2)


def colorable_gamma(r: int) -> int:
    """Smallest integer gamma with (e*gamma)^(1/gamma) <= 2^(1/(2r)) and gamma >= 2r/ln 2."""
    bound = LN2 / (2 * r)
    gamma = max(2, int(mp.ceil(2 * r / LN2)))
    while (1 + mp.log(gamma)) / gamma > bound:
        gamma += 1
    return gamma


def colorable_profile(r: int) -> GrowthProfile:
    """Graphs that are (r+1)-colorable: g(s) = 2^(s/r)."""
    if isinstance(r, bool) or not isinstance(r, int) or r < 2:
        raise ParameterError(f"r must be an integer >= 2, got {r!r}")
    gamma = colorable_gamma(r)
    prof = GrowthProfile(
        name="colorable",
        params={"r": r, "gamma": gamma},
        log_g=lambda s: s * LN2 / r,
        psi=lambda s: s * LN2 / r,
        psi_nondecreasing=True,
        b_rule=None,
    )
    prof.b_rule = lambda delta: s_delta(prof, delta) // gamma
    return prof


CLIQUE_C_START = Fraction(1, 4)
CLIQUE_C_STEP = Fraction(1, 32)


def clique_b(prof: GrowthProfile, delta) -> tuple[int, Fraction]:
    """b = floor(c * ln D / (r ln ln D)) for the largest c on the grid
    1/4, 7/32, ..., 1/32 that passes the verifier; ``(0, 0)`` if none does."""
    r = prof.params["r"]
    ld = _log_delta(delta)
    if ld <= 1:
        return 0, Fraction(0)
    base = ld / (r * mp.log(ld))
    c = CLIQUE_C_START
    while c > 0:
        b = _floor(to_mpf(c) * base)
        if b >= 1 and verify_obsver(prof, delta, b).ok:
            return b, c
        c -= CLIQUE_C_STEP
    return 0, Fraction(0)


def clique_profile(r: int) -> GrowthProfile:
    """Graphs of clique number at most r+1: g(s) = 2^(s^(1/r) - 1)."""
    if isinstance(r, bool) or not isinstance(r, int) or r < 2:
        raise ParameterError(f"r must be an integer >= 2, got {r!r}")
    prof = GrowthProfile(
        name="clique",
        params={"r": r},
        log_g=lambda s: LN2 * (mp.root(s, r) - 1),
        psi=lambda s: LN2 * mp.root(s, r) / r,
        psi_nondecreasing=True,
        b_rule=None,
    )
    prof.b_rule = lambda delta: clique_b(prof, delta)[0]
    return prof


def _check_p(p):
    if not 0 < p < 1:
        raise ParameterError(f"p must lie strictly between 0 and 1, got {p}")
    return -mp.log(to_mpf(p))


def randomgraph_profile(p) -> GrowthProfile:
    """G(n, 1-p) with non-edge probability p: g(s) = exp(ln^2 s / (3 ln(1/p)))."""
    L = _check_p(p)

    def b_rule(delta):
        raw = _floor(mp.sqrt(_log_delta(delta) / L) / 6) - 1
        return max(raw, 0)

    return GrowthProfile(
        name="randomgraph",
        params={"p": p},
        log_g=lambda s: mp.log(s) ** 2 / (3 * L),
        psi=lambda s: 2 * mp.log(s) / (3 * L),
        psi_nondecreasing=True,
        b_rule=b_rule,
    )


def randomgraph_s_delta_closed_form(p, delta) -> int:
    """ceil(exp(sqrt(ln(1/p) ln delta))), the inverse of g_p in closed form."""
    L = _check_p(p)
    x = mp.exp(mp.sqrt(L * _log_delta(delta)))
    k = int(mp.nint(x))
    if abs(x - k) <= _TOL * max(1, x):
        return max(k, 1)
    return max(int(mp.ceil(x)), 1)


def trianglefree_b(delta) -> float:
    """b = log2(delta) / 6 for triangle-free graphs.

    Exact by a direct argument (every neighborhood subgraph is edgeless),
    so this rule does not go through :func:`verify_obsver`.
    """
    if delta < 1:
        raise ParameterError(f"delta must be >= 1, got {delta}")
    if isinstance(delta, int):
        return math.log2(delta) / 6
    return float(mp.log(to_mpf(delta), 2) / 6)


@dataclass(frozen=True)
class TriangleFreeRule:
    name: str = "trianglefree"
    note: str = "edgeless neighborhoods; I(F) = 2^s; not routed through the verifier"

    def b_formula(self, delta) -> float:
        return trianglefree_b(delta)


def builtin_profiles(r: int = 2, p=Fraction(1, 2)) -> dict:
    return {
        "trianglefree": TriangleFreeRule(),
        "colorable": colorable_profile(r),
        "clique": clique_profile(r),
        "randomgraph": randomgraph_profile(p),
    }
