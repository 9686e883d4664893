import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dpcolor.errors import LoadError, ParameterError
from dpcolor.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    delete_vertices,
    empty_graph,
    induced_subgraph,
    random_bipartite_graph,
    random_graph,
    turan_bound,
)
from dpcolor.iscount import independence_number
from oracles import edge_set


def test_random_graph_extremes():
    assert random_graph(5, 0, seed=3).num_edges == 0
    g = random_graph(5, 1, seed=3)
    assert g.num_edges == 10 and g == complete_graph(5)


def test_random_graph_rejects_bad_probability():
    with pytest.raises(ParameterError):
        random_graph(5, 1.5, seed=0)
    with pytest.raises(ParameterError):
        random_graph(5, -0.1, seed=0)


def test_random_graph_is_deterministic():
    assert random_graph(30, 0.3, seed=11) == random_graph(30, 0.3, seed=11)
    assert random_graph(30, 0.3, seed=11).rows == random_graph(30, 0.3, seed=11).rows
    assert random_graph(30, 0.3, seed=11) != random_graph(30, 0.3, seed=12)


@pytest.mark.slow
def test_random_graph_mean_edge_count():
    counts = [random_graph(1000, 0.5, seed=s).num_edges for s in range(1000)]
    mean = np.mean(counts)
    pairs = 1000 * 999 // 2
    # sd of a single count is sqrt(pairs/4); five of them is a generous band
    assert abs(mean - pairs / 2) <= 5 * np.sqrt(pairs * 0.25)
    # the spread of individual counts should also look binomial
    assert 0.8 < np.std(counts) / np.sqrt(pairs * 0.25) < 1.2


def test_random_bipartite_has_no_edges_inside_sides():
    g = random_bipartite_graph(6, 7, 0.5, seed=4)
    assert g.n == 13
    for u, v in g.edges():
        assert (u < 6) != (v < 6)


def test_induced_subgraph_examples():
    assert induced_subgraph(complete_graph(4), [0, 1, 2]) == complete_graph(3)
    assert induced_subgraph(cycle_graph(5), []).n == 0
    h = induced_subgraph(cycle_graph(5), [0, 2, 3])
    assert h.n == 3 and h.num_edges == 1
    assert h.labels == (0, 2, 3)
    assert h.adjacent(1, 2) and h.degree(0) == 0


def test_induced_subgraph_rejects_bad_vertex():
    with pytest.raises(ParameterError):
        induced_subgraph(cycle_graph(5), [0, 7])


def test_delete_vertices():
    g = delete_vertices(cycle_graph(5), [0])
    assert g.n == 4 and g.num_edges == 3


def test_turan_bound_examples():
    assert turan_bound(10, 4) == 2
    assert turan_bound(7, 0) == 7
    assert turan_bound(9, 2) == 3
    assert isinstance(turan_bound(10, Fraction(3, 2)), Fraction)
    with pytest.raises(ParameterError):
        turan_bound(5, -1)


def test_turan_bound_holds_on_random_graphs():
    rng = np.random.default_rng(2024)
    for i in range(200):
        n = int(rng.integers(1, 15))
        g = random_graph(n, float(rng.uniform(0, 1)), seed=i)
        bound = turan_bound(g.n, g.average_degree())
        alpha = independence_number(g)
        assert alpha >= -(-bound.numerator // bound.denominator)


@given(st.integers(0, 25), st.floats(0, 1), st.integers(0, 2 ** 64 - 1))
def test_degree_sum_is_twice_edges(n, q, seed):
    g = random_graph(n, q, seed)
    assert sum(g.degrees()) == 2 * g.num_edges
    assert all(not g.adjacent(v, v) for v in range(n))
    assert all(g.adjacent(u, v) == g.adjacent(v, u) for u in range(n) for v in range(n))


@given(st.integers(0, 20), st.floats(0, 1), st.integers(0, 10 ** 6))
def test_json_round_trip(n, q, seed):
    g = random_graph(n, q, seed)
    text = g.to_json()
    assert Graph.from_json(text) == g
    assert Graph.from_json(text).to_json() == text
    assert edge_set(Graph.from_json(text)) == edge_set(g)


def test_save_load_round_trip_is_byte_identical(tmp_path):
    g = random_graph(20, 0.4, seed=9)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    g.save(a)
    Graph.load(a).save(b)
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("doc", [
    {"n": 3, "edges": [[0, 1], [0, 1]]},
    {"n": 3, "edges": [[1, 1]]},
    {"n": 3, "edges": [[0, 3]]},
    {"n": 3, "edges": [[1, 0]]},
    {"n": 3, "edges": [[1, 2], [0, 1]]},
    {"n": -1, "edges": []},
    {"edges": []},
    {"n": 2, "edges": [[0]]},
])
def test_loader_rejects_malformed(doc):
    with pytest.raises(LoadError):
        Graph.from_json(json.dumps(doc))


def test_loader_reports_position_on_bad_json():
    with pytest.raises(LoadError, match="line 2"):
        Graph.from_json('{"n": 3,\n "edges": [[0, 1],]}')


def test_graph_is_immutable():
    g = empty_graph(3)
    with pytest.raises(AttributeError):
        g.n = 4
