"""Expected independent-set counts in random graphs, the tail bounds built
on them, and Monte Carlo experiments that check those bounds.

Two random-graph conventions meet here, so every function says which it
uses:

* ``run_concentration_experiment`` samples G(s, 1-p): ``p`` is the
  probability that a pair is a NON-edge.
* ``run_alpha_experiment`` samples G(s, p): ``p`` is the EDGE probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import ParameterError, ResourceError
from .graph import random_graph
from .iscount import MAX_COUNT_VERTICES, count_profile, count_sets_of_size
from .parallel import map_ordered
from .richness import mp, to_mpf
from .rng import derive

RATIONAL_DENOMINATOR_LIMIT = 1 << 16


def as_rational(p):
    """``p`` as a Fraction when it is exactly a/b with b <= 2^16, else None."""
    if isinstance(p, bool):
        return None
    if isinstance(p, (int, Fraction)):
        f = Fraction(p)
    elif isinstance(p, float):
        f = Fraction(p)
    else:
        return None
    return f if f.denominator <= RATIONAL_DENOMINATOR_LIMIT else None


def _check_st(s, t):
    if s < 0 or t < 0 or t > s:
        raise ParameterError(f"need 0 <= t <= s, got s={s}, t={t}")


def _check_prob(p, *, allow_one=True):
    ok = 0 < p <= 1 if allow_one else 0 < p < 1
    if not ok:
        raise ParameterError(f"p out of range: {p}")


def expected_is_count(s: int, t: int, p):
    """C(s, t) * p^C(t, 2) evaluated in log space (mpf)."""
    _check_st(s, t)
    _check_prob(p)
    log_val = (mp.loggamma(s + 1) - mp.loggamma(t + 1) - mp.loggamma(s - t + 1)
               + comb(t, 2) * mp.log(to_mpf(p)))
    return mp.exp(log_val)


def expected_is_count_exact(s: int, t: int, p) -> Fraction:
    """Same quantity as an exact rational; ``p`` must be rational."""
    _check_st(s, t)
    _check_prob(p)
    q = as_rational(p)
    if q is None:
        raise ParameterError(f"p={p} is not a rational with denominator <= 2^16")
    return comb(s, t) * q ** comb(t, 2)


def optimal_t(s: int, p) -> int:
    """Integer ``t`` in [1, s] maximizing the expected count; ties go low."""
    if s < 1:
        raise ParameterError(f"s must be >= 1, got {s}")
    _check_prob(p, allow_one=False)
    best, best_val = 1, expected_is_count(s, 1, p)
    for t in range(2, s + 1):
        val = expected_is_count(s, t, p)
        if val > best_val:
            best, best_val = t, val
    return best


def continuous_optimal_t(s: int, p):
    """ln s / ln(1/p), the real-valued location of the maximum."""
    _check_prob(p, allow_one=False)
    return mp.log(s) / -mp.log(to_mpf(p))


@dataclass(frozen=True)
class DependencyQuantities:
    mu: object
    d: object
    D: object
    d_relaxed: object = None
    D_relaxed: object = None
    edgeless: bool = False


def dependency_quantities(s: int, t: int, p) -> DependencyQuantities:
    """mu, d and D for the size-t independent-set indicators of G(s, 1-p).

    Indicators for two t-sets are dependent when the sets share at least two
    vertices. With overlap ``i``:

    d = p^C(t,2) * sum_{i=2}^{t-1} C(t,i) C(s-t,t-i)
    D = 1/2 C(s,t) p^(2C(t,2)) * sum_{i=2}^{t-1} C(t,i) C(s-t,t-i) p^(-C(i,2))

    ``d_relaxed`` and ``D_relaxed`` are the coarser closed-form bounds
    2 p^C(t,2) C(t,2) C(s,t-2) and C(s,t) p^(2C(t,2)-1) C(t,2) C(s,t-2).
    For t <= 2 no two distinct t-sets share two vertices, so d = D = 0 and
    the result is flagged ``edgeless``.
    """
    _check_st(s, t)
    _check_prob(p)
    q = as_rational(p)
    num = q if q is not None else to_mpf(p)
    half = Fraction(1, 2) if q is not None else mp.mpf(1) / 2
    tc = comb(t, 2)
    mu = comb(s, t) * num ** tc
    if t <= 2:
        zero = 0 * num
        return DependencyQuantities(mu, zero, zero, zero, zero, edgeless=True)
    d_sum = sum(comb(t, i) * comb(s - t, t - i) for i in range(2, t))
    D_sum = sum(comb(t, i) * comb(s - t, t - i) * num ** (-comb(i, 2)) for i in range(2, t))
    d = num ** tc * d_sum
    D = half * comb(s, t) * num ** (2 * tc) * D_sum
    d_rel = 2 * num ** tc * tc * comb(s, t - 2)
    D_rel = comb(s, t) * num ** (2 * tc - 1) * tc * comb(s, t - 2)
    return DependencyQuantities(mu, d, D, d_rel, D_rel)


def suen_bound(q: DependencyQuantities):
    """exp(-min(mu^2 / (32 D + 8 mu), mu / (12 d)))."""
    mu, d, D = to_mpf(q.mu), to_mpf(q.d), to_mpf(q.D)
    if mu <= 0:
        raise ParameterError(f"mu must be positive, got {mu}")
    if d <= 0:
        raise ParameterError(f"d must be positive, got {d}")
    if D < 0:
        raise ParameterError(f"D must be nonnegative, got {D}")
    exponent = min(mu ** 2 / (32 * D + 8 * mu), mu / (12 * d))
    if exponent <= 0:
        return mp.mpf(1)
    return mp.exp(-exponent)


def count_tail_hypotheses(s: int, t: int, p) -> list[str]:
    """Names of the violated hypotheses (empty when the tail bound applies)."""
    bad = []
    if t < 1:
        bad.append("t >= 1")
    if s < 2 * t * t + t:
        bad.append(f"s >= 2t^2 + t ({s} < {2 * t * t + t})")
    if t >= 1 and t <= s:
        q = as_rational(p)
        if q is not None:
            ok = expected_is_count_exact(s, t, q) * t ** 4 >= s * s
        else:
            ok = expected_is_count(s, t, p) >= mp.mpf(s * s) / t ** 4
        if not ok:
            bad.append("I_p(s,t) >= s^2/t^4")
    return bad


def count_tail_bound(s: int, t: int, p):
    """exp(-s^2 p / (80 t^4)): bound on P[#size-t independent sets <= mu/2]
    in G(s, 1-p). Raises when a hypothesis fails."""
    _check_prob(p)
    bad = count_tail_hypotheses(s, t, p)
    if bad:
        raise ParameterError("tail-bound hypothesis violated: " + "; ".join(bad))
    return mp.exp(-mp.mpf(s * s) * to_mpf(p) / (80 * t ** 4))


def g_p_value(s, p):
    """exp(ln^2 s / (3 ln(1/p)))."""
    _check_prob(p, allow_one=False)
    if s < 1:
        raise ParameterError(f"s must be >= 1, got {s}")
    return mp.exp(mp.log(to_mpf(s)) ** 2 / (3 * -mp.log(to_mpf(p))))


def chernoff_tail(mu, t):
    """e^(-t/8), valid for t >= 2 mu."""
    if mu < 0:
        raise ParameterError(f"mu must be nonnegative, got {mu}")
    if t < 2 * mu:
        raise ParameterError(f"the bound needs t >= 2 mu, got t={t}, mu={mu}")
    return mp.exp(-to_mpf(t) / 8)


def a_threshold(s, n):
    """min(s / 15, ln^2 n)."""
    if s < 0 or n < 1:
        raise ParameterError(f"need s >= 0 and n >= 1, got s={s}, n={n}")
    return min(to_mpf(s) / 15, mp.log(to_mpf(n)) ** 2)


# ------------------------------------------------------------ experiments


@dataclass
class ConcReport:
    s: int
    t: int
    p: object
    trials: int
    seed: int
    mu: object
    empirical_mean: object
    empirical_tail_freq: Fraction
    analytic_suen: object
    analytic_tail_bound: object
    preconditions_ok: bool
    rows: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        def num(x):
            return None if x is None else mp.nstr(to_mpf(x), 17)
        return {
            "experiment": "conc",
            "s": self.s, "t": self.t, "nonedge_p": str(self.p),
            "trials": self.trials, "seed": self.seed,
            "mu": num(self.mu),
            "empirical_mean": num(self.empirical_mean),
            "empirical_tail_freq": num(self.empirical_tail_freq),
            "analytic_suen": num(self.analytic_suen),
            "analytic_tail_bound": num(self.analytic_tail_bound),
            "preconditions_ok": self.preconditions_ok,
        }


def _conc_trial(args):
    s, t, q, seed = args
    return count_sets_of_size(random_graph(s, q, seed), t)


def run_concentration_experiment(s: int, t: int, p, trials: int, seed: int,
                                 threads: int = 1) -> ConcReport:
    """Count size-t independent sets in ``trials`` samples of G(s, 1-p).

    ``p`` is the NON-edge probability; graphs are drawn with edge
    probability ``1 - p``. Trial ``i`` uses seed ``derive(seed, i)``.
    """
    _check_st(s, t)
    _check_prob(p)
    if trials < 1:
        raise ParameterError("trials must be positive")
    if s > MAX_COUNT_VERTICES:
        raise ResourceError(f"counting budget is {MAX_COUNT_VERTICES} vertices, got s={s}")
    q = float(1 - Fraction(p)) if as_rational(p) is not None else float(1 - to_mpf(p))
    seeds = [derive(seed, i) for i in range(trials)]
    counts = map_ordered(_conc_trial, [(s, t, q, sd) for sd in seeds], threads)

    rational = as_rational(p)
    if rational is not None:
        mu = expected_is_count_exact(s, t, rational)
        tail = sum(1 for c in counts if 2 * c <= mu)
    else:
        mu = expected_is_count(s, t, p)
        tail = sum(1 for c in counts if 2 * c <= mu)
    mean = Fraction(sum(counts), trials)

    dq = dependency_quantities(s, t, p)
    suen = suen_bound(dq) if not dq.edgeless and mu > 0 else None
    pre_ok = not count_tail_hypotheses(s, t, p)
    tail_bound = count_tail_bound(s, t, p) if pre_ok else None
    rows = [{"trial": i, "seed": sd, "count": c} for i, (sd, c) in enumerate(zip(seeds, counts))]
    return ConcReport(s, t, p, trials, seed, mu, mean, Fraction(tail, trials),
                      suen, tail_bound, pre_ok, rows)


@dataclass
class AlphaReport:
    s: int
    n: int
    p: object
    trials: int
    seed: int
    threshold: object
    empirical_freq: Fraction
    analytic_bound: object
    hypothesis_ok: bool
    rows: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "experiment": "alpha",
            "s": self.s, "n": self.n, "edge_p": mp.nstr(to_mpf(self.p), 17),
            "trials": self.trials, "seed": self.seed,
            "threshold": mp.nstr(self.threshold, 17),
            "empirical_freq": mp.nstr(to_mpf(self.empirical_freq), 17),
            "analytic_bound": mp.nstr(self.analytic_bound, 17),
            "hypothesis_ok": self.hypothesis_ok,
        }


def _alpha_trial(args):
    s, p, seed = args
    return count_profile(random_graph(s, p, seed)).alpha


def run_alpha_experiment(s: int, n: int, p, trials: int, seed: int,
                         enforce_hypothesis: bool = True, threads: int = 1) -> AlphaReport:
    """Estimate P[alpha(G(s, p)) <= min(s/15, ln^2 n)] and report n^(-3s).

    ``p`` is the EDGE probability. The bound is only claimed for
    ``p <= n^(-13/14)``; pass ``enforce_hypothesis=False`` to explore
    beyond it.
    """
    if not 0 < p <= 1:
        raise ParameterError(f"edge probability must lie in (0, 1], got {p}")
    if n < 1 or s < 0 or trials < 1:
        raise ParameterError("need n >= 1, s >= 0, trials >= 1")
    limit = to_mpf(n) ** (mp.mpf(-13) / 14)
    hyp = to_mpf(p) <= limit * (1 + mp.mpf("1e-12"))
    if enforce_hypothesis and not hyp:
        raise ParameterError(f"edge probability {p} exceeds n^(-13/14) = {mp.nstr(limit, 8)}")
    thr = a_threshold(s, n)
    seeds = [derive(seed, i) for i in range(trials)]
    alphas = map_ordered(_alpha_trial, [(s, float(p), sd) for sd in seeds], threads)
    hits = sum(1 for a in alphas if a <= thr)
    bound = to_mpf(n) ** (-3 * s)
    rows = [{"trial": i, "seed": sd, "alpha": a} for i, (sd, a) in enumerate(zip(seeds, alphas))]
    return AlphaReport(s, n, p, trials, seed, thr, Fraction(hits, trials), bound, bool(hyp), rows)
