"""Brute-force reference implementations used only by the tests.

Nothing here imports the counting, solving or resampling code it checks.
"""

from fractions import Fraction
from itertools import combinations, product


def edge_set(g):
    return {(u, v) for u in range(g.n) for v in range(u + 1, g.n) if (g.rows[u] >> v) & 1}


def independent_sets(n, edges):
    """Every independent vertex subset, as frozensets."""
    out = []
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            s = set(combo)
            if not any(u in s and v in s for u, v in edges):
                out.append(frozenset(combo))
    return out


def profile_counts(n, edges):
    counts = [0] * (n + 1)
    for s in independent_sets(n, edges):
        counts[len(s)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return tuple(counts)


def all_labeled_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]


def conflicts(ca, u, cu, v, cv):
    return ca.partner(u, cu, v) == cv


def all_colorings(ca):
    """Every full (L, M)-coloring, by testing the product of the lists."""
    n = ca.base.n
    edges = sorted(edge_set(ca.base))
    out = []
    for combo in product(*[ca.lists[v] for v in range(n)]):
        if not any(conflicts(ca, u, combo[u], v, combo[v]) for u, v in edges):
            out.append(combo)
    return out


def all_partial_colorings(ca, uncolored=()):
    """Every valid partial coloring leaving ``uncolored`` out of the domain."""
    n = ca.base.n
    edges = sorted(edge_set(ca.base))
    choices = [(None,) if v in uncolored else (None,) + tuple(ca.lists[v]) for v in range(n)]
    out = []
    for combo in product(*choices):
        ok = True
        for u, v in edges:
            if combo[u] is not None and combo[v] is not None and conflicts(ca, u, combo[u], v, combo[v]):
                ok = False
                break
        if ok:
            out.append(tuple((v, c) for v, c in enumerate(combo) if c is not None))
    return out


def dependency_sums(s, t, p):
    """mu, max_S d_S and D by iterating over all pairs of t-subsets."""
    p = Fraction(p)
    sets = [frozenset(c) for c in combinations(range(s), t)]
    e_single = p ** (t * (t - 1) // 2)
    mu = len(sets) * e_single
    d = Fraction(0)
    D = Fraction(0)
    for S in sets:
        dS = Fraction(0)
        for T in sets:
            if T != S and len(S & T) >= 2:
                dS += e_single
                union = S | T
                pairs_in_union = len(union) * (len(union) - 1) // 2
                # pairs inside both S and T are shared; union edges must all be absent
                shared = len(S & T) * (len(S & T) - 1) // 2
                covered = 2 * (t * (t - 1) // 2) - shared
                assert covered <= pairs_in_union
                D += p ** covered
        d = max(d, dS)
    return mu, d, D / 2


def solver_corpus(count=200, seed=20240611):
    """Seeded (graph, assignment) pairs with n <= 6 and lists of size <= 3.

    Mixes perfect random matchings, thinned partial matchings and uneven
    lists so both sat and unsat instances appear.
    """
    import random

    from dpcolor.correspondence import CorrespondenceAssignment
    from dpcolor.graph import random_graph

    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, 6)
        g = random_graph(n, rng.uniform(0.3, 1.0), seed=rng.getrandbits(32))
        ell = rng.randint(1, 3)
        lists = [sorted(rng.sample(range(1, 4), rng.randint(1, ell))) for _ in range(n)]
        keep = rng.choice([1.0, 1.0, 0.7])
        matchings = {}
        for u, v in sorted(edge_set(g)):
            a, b = list(lists[u]), list(lists[v])
            rng.shuffle(b)
            pairs = [(x, y) for x, y in zip(a, b) if rng.random() < keep]
            matchings[(u, v)] = pairs
        out.append((g, CorrespondenceAssignment(g, lists, matchings)))
    return out


def is_stationary(kernel, states):
    """Uniform weight on ``states`` is preserved by ``kernel`` (exact).

    ``kernel(state)`` returns a dict mapping next states to Fractions.
    """
    weight = Fraction(1, len(states))
    mass = {s: Fraction(0) for s in states}
    for s in states:
        dist = kernel(s)
        if sum(dist.values()) != 1:
            return False
        for nxt, pr in dist.items():
            if nxt not in mass:
                return False
            mass[nxt] += weight * pr
    return all(m == weight for m in mass.values())
