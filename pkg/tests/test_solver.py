import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dpcolor.correspondence import (
    CorrespondenceAssignment,
    from_lists,
    random_assignment,
    validate,
)
from dpcolor.errors import ParameterError
from dpcolor.graph import (
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    random_graph,
    star_graph,
)
from dpcolor.solver import (
    BUDGET,
    COLORED,
    UNSAT,
    decide_colorable,
    default_cap,
    ell_for,
    ell_for_complete,
    event_Au,
    event_BS,
    event_Bu,
    event_threshold,
    greedy_extend,
    lll_color,
    resample_kernel,
    resample_neighborhood,
)
from oracles import all_colorings, all_partial_colorings, is_stationary, solver_corpus

K2 = complete_graph(2)


def k2(lists, pairs):
    return CorrespondenceAssignment(K2, lists, {(0, 1): pairs})


# ------------------------------------------------------------ exact solver


def test_decide_examples():
    assert decide_colorable(K2, k2([[1], [1]], [(1, 1)]), 100).status == UNSAT
    res = decide_colorable(K2, k2([[1], [1]], []), 100)
    assert res.status == COLORED and res.coloring == {0: 1, 1: 1}
    k3 = complete_graph(3)
    assert decide_colorable(k3, from_lists(k3, [[1, 2]] * 3)).status == UNSAT


def test_decide_budget():
    g = complete_graph(9)
    res = decide_colorable(g, from_lists(g, [range(1, 9)] * 9), budget=50)
    assert res.status == BUDGET and res.coloring is None


def test_decide_rejects_foreign_graph():
    with pytest.raises(ParameterError):
        decide_colorable(complete_graph(3), from_lists(K2, [[1], [2]]))


def test_decide_matches_enumeration_on_corpus():
    for g, ca in solver_corpus(120, seed=1):
        res = decide_colorable(g, ca)
        assert (res.status == COLORED) == bool(all_colorings(ca))


def test_adding_colors_keeps_instances_colorable():
    rng = random.Random(4)
    for i in range(150):
        n = rng.randint(2, 6)
        g = random_graph(n, 0.6, seed=i)
        lists = [rng.sample(range(1, 5), rng.randint(1, 3)) for _ in range(n)]
        if decide_colorable(g, from_lists(g, lists)).status != COLORED:
            continue
        for v in range(n):
            extra = [c for c in range(1, 6) if c not in lists[v]]
            bigger = [list(lst) for lst in lists]
            bigger[v].append(rng.choice(extra))
            assert decide_colorable(g, from_lists(g, bigger)).status == COLORED


def test_result_serialization_drops_timing():
    res = decide_colorable(K2, k2([[1], [1]], []))
    d = res.to_dict()
    assert d["status"] == COLORED and d["coloring"] == [1, 1]
    assert "wall_time" not in d["stats"] and "wall_time" in res.to_dict(timing=True)["stats"]


# ------------------------------------------------------------ greedy


def test_greedy_examples():
    ca = from_lists(empty_graph(3), [[3, 5], [2], [7, 1]])
    assert greedy_extend(empty_graph(3), ca, {}, [2, 0, 1]) == {0: 3, 1: 2, 2: 1}
    ident = k2([[1, 2], [1, 2]], [(1, 1), (2, 2)])
    assert greedy_extend(K2, ident, {0: 1}, [0, 1]) == {0: 1, 1: 2}


def test_greedy_skips_blocked_vertices_and_never_uncolors():
    ca = k2([[1], [1]], [(1, 1)])
    assert greedy_extend(K2, ca, {0: 1}, [1, 0]) == {0: 1}


@given(st.integers(0, 10 ** 6))
def test_greedy_completes_when_lists_beat_degrees(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 10)
    g = random_graph(n, rng.random(), seed)
    ell = g.max_degree + 1
    ca = random_assignment(g, ell, seed)
    order = list(range(n))
    rng.shuffle(order)
    phi = greedy_extend(g, ca, {}, order)
    assert len(phi) == n and validate(ca, phi)


# ------------------------------------------------------------ events


def test_threshold_is_exact_ceiling():
    for d in range(0, 3000):
        k = event_threshold(d)
        assert k ** 12 >= d ** 7 and (k == 0 or (k - 1) ** 12 < d ** 7)
    assert event_threshold(2 ** 12) == 2 ** 7


def test_event_a_examples():
    g = star_graph(4)
    ca = random_assignment(g, 3, seed=1)
    assert not event_Au(g, ca, {}, 0, 4)
    assert not event_Au(g, ca, {0: 1}, 0, 4)
    ident = k2([[1], [1]], [(1, 1)])
    assert event_Au(K2, ident, {1: 1}, 0, 1)


def test_event_b_examples():
    g = star_graph(8)
    ca = from_lists(g, [range(1, 11)] * 9)
    full = {v: 1 + (v > 0) for v in range(9)}
    assert not event_Bu(g, ca, full, 0, 8)
    assert event_Bu(g, ca, {}, 0, 8)
    iso = empty_graph(3)
    assert not event_Bu(iso, from_lists(iso, [[1]] * 3), {}, 0, 1)
    assert event_BS(g, ca, {}, [1, 2, 3], 8)
    assert not event_BS(g, ca, {2: 1}, [1, 2, 3], 8)


# ------------------------------------------------------------ resampling


def test_single_edge_kernel():
    ca = k2([[1, 2], [1, 2]], [(1, 1), (2, 2)])
    dist = resample_kernel(K2, ca, {}, 0)
    assert dist == {(): Fraction(1, 4), ((1, 1),): Fraction(1, 2), ((1, 2),): Fraction(1, 4)}


def test_kernel_without_matched_pairs_is_identity():
    ca = k2([[1, 2], [1, 2]], [])
    assert resample_kernel(K2, ca, {1: 2}, 0) == {((1, 2),): 1}
    assert resample_neighborhood(K2, ca, {1: 2}, 0, seed=5) == {1: 2}


def test_resample_requires_uncolored_center():
    ca = k2([[1, 2], [1, 2]], [(1, 1)])
    with pytest.raises(ParameterError):
        resample_neighborhood(K2, ca, {0: 1}, 0, seed=0)


@given(st.integers(0, 10 ** 6))
def test_resample_output_is_valid(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    g = random_graph(n, rng.uniform(0.2, 0.9), seed)
    ca = random_assignment(g, rng.randint(1, 4), seed)
    phi = greedy_extend(g, ca, {}, rng.sample(range(n), n))
    u = rng.randrange(n)
    phi.pop(u, None)
    out = resample_neighborhood(g, ca, phi, u, seed)
    assert u not in out and validate(ca, out)
    # only the neighborhood of u may change
    for v in range(n):
        if v != u and v not in g.neighbors(u):
            assert out.get(v) == phi.get(v)


def test_resample_is_deterministic():
    g = random_graph(10, 0.5, seed=3)
    ca = random_assignment(g, 3, seed=3)
    assert resample_neighborhood(g, ca, {}, 0, 9) == resample_neighborhood(g, ca, {}, 0, 9)


def test_sampled_resample_follows_exact_kernel():
    g = path_graph(3)
    ca = from_lists(g, [[1, 2]] * 3)
    dist = resample_kernel(g, ca, {}, 1)
    draws = 6000
    freq = {}
    for s in range(draws):
        key = tuple(sorted(resample_neighborhood(g, ca, {}, 1, s).items()))
        freq[key] = freq.get(key, 0) + 1
    assert set(freq) <= set(dist)
    for key, p in dist.items():
        p = float(p)
        assert abs(freq.get(key, 0) - draws * p) < 5 * (draws * p * (1 - p)) ** 0.5


def _stationary_for(g, ca, u):
    states = [s for s in all_partial_colorings(ca, uncolored=(u,))]
    return is_stationary(lambda s: resample_kernel(g, ca, dict(s), u), states)


def test_uniform_partial_colorings_are_stationary_on_random_assignments():
    for seed in range(6):
        g = complete_graph(3)
        ca = random_assignment(g, 2, seed)
        assert _stationary_for(g, ca, seed % 3)
    star = star_graph(3)
    for seed in range(4):
        assert _stationary_for(star, random_assignment(star, 2, seed), 0)


def test_stationarity_with_partial_matchings():
    g = cycle_graph(4)
    ca = CorrespondenceAssignment(g, [[1, 2]] * 4, {
        (0, 1): [(1, 2)], (1, 2): [(1, 1), (2, 2)], (2, 3): [(2, 1)], (0, 3): [(1, 1), (2, 2)]})
    for u in range(4):
        assert _stationary_for(g, ca, u)


# ------------------------------------------------------------ LLL driver


def test_lll_examples():
    g = random_graph(12, 0.5, seed=2)
    lists = [range(1, g.degree(v) + 2) for v in range(g.n)]
    assert lll_color(g, from_lists(g, lists), seed=1).status == COLORED

    res = lll_color(K2, random_assignment(K2, 1, 0), seed=0)
    assert res.status == BUDGET and "partial" in res.stats
    assert decide_colorable(K2, random_assignment(K2, 1, 0)).status == UNSAT

    k8 = complete_graph(8)
    ca = random_assignment(k8, 8, seed=31)
    res = lll_color(k8, ca, seed=31)
    assert res.status == COLORED and validate(ca, res.coloring)
    assert decide_colorable(k8, ca).status == COLORED


def test_lll_never_contradicts_exact_solver():
    for i, (g, ca) in enumerate(solver_corpus(80, seed=2)):
        res = lll_color(g, ca, seed=i, cap=200)
        exact = decide_colorable(g, ca)
        assert res.status in (COLORED, BUDGET)
        if res.status == COLORED:
            assert exact.status == COLORED and validate(ca, res.coloring)


def test_lll_is_deterministic():
    g = random_graph(14, 0.5, seed=8)
    ca = random_assignment(g, 4, seed=8)
    a, b = lll_color(g, ca, seed=3, cap=300), lll_color(g, ca, seed=3, cap=300)
    assert a.to_dict() == b.to_dict()
    c = lll_color(random_graph(10, 0.3, seed=1), random_assignment(random_graph(10, 0.3, seed=1), 5, 1), seed=2)
    assert c.status == COLORED


def test_default_cap():
    assert default_cap(complete_graph(4)) == 2 * 4 * 27


# ------------------------------------------------------------ list sizes


def test_ell_for_examples():
    assert ell_for(100, 4, 1) == 126
    assert ell_for(100, 4, 200) == 200
    assert ell_for(100, 4, 1) % 2 == 0
    assert ell_for(100, Fraction(5, 2), 1) == 200
    with pytest.raises(ParameterError):
        ell_for(100, 0)


def test_ell_for_complete():
    import math
    assert ell_for_complete(16) == 2 * math.ceil(5 * 15 / (2 * math.log(16) / 21))
    with pytest.raises(ParameterError):
        ell_for_complete(1)
