"""Simple undirected graphs stored as per-vertex adjacency bitmasks.

Random graphs here are parametrized by the *edge* probability ``q``.
The G(n, 1-p) convention for non-edge probability ``p`` maps to
``random_graph(n, q=1-p, seed)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational, Real

import numpy as np

from .errors import LoadError, ParameterError
from .rng import np_rng


def iter_bits(mask):
    """Indices of set bits in ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``rows[v]`` is an int whose bit ``u`` is set iff ``uv`` is an edge.
    ``labels`` maps local vertex indices back to the parent graph when the
    graph came from :func:`induced_subgraph`.
    """

    __slots__ = ("n", "rows", "labels")

    def __init__(self, n: int, rows, labels=None):
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ParameterError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for v, r in enumerate(rows):
            if r & ~full:
                raise ParameterError(f"row {v} references a vertex >= {n}")
            if (r >> v) & 1:
                raise ParameterError(f"self-loop at vertex {v}")
            for u in iter_bits(r):
                if not (rows[u] >> v) & 1:
                    raise ParameterError(f"adjacency not symmetric at ({u}, {v})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else tuple(range(n)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def _trusted(cls, n, rows, labels=None):
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", tuple(rows))
        object.__setattr__(g, "labels", tuple(labels) if labels is not None else tuple(range(n)))
        return g

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        if n < 0:
            raise ParameterError(f"vertex count must be nonnegative, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, rows)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbor_mask(self, v: int) -> int:
        return self.rows[v]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def max_degree(self) -> int:
        return max((r.bit_count() for r in self.rows), default=0)

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def average_degree(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(2 * self.num_edges, self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, r in enumerate(self.rows):
            out.extend((u, v) for v in iter_bits(r >> (u + 1) << (u + 1)))
        return out

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> "Graph":
        if not isinstance(data, dict):
            raise LoadError("graph document must be a JSON object")
        n = data.get("n")
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise LoadError(f"field 'n' must be a nonnegative integer, got {n!r}")
        edges = data.get("edges")
        if not isinstance(edges, list):
            raise LoadError("field 'edges' must be a list")
        seen = set()
        prev = None
        for i, e in enumerate(edges):
            if (not isinstance(e, list) or len(e) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
                raise LoadError(f"edges[{i}]: expected [u, v] integer pair, got {e!r}")
            u, v = e
            if u == v:
                raise LoadError(f"edges[{i}]: self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise LoadError(f"edges[{i}]: vertex out of range for n={n}")
            if u > v:
                raise LoadError(f"edges[{i}]: expected u < v, got {e!r}")
            if (u, v) in seen:
                raise LoadError(f"edges[{i}]: duplicate edge {e!r}")
            if prev is not None and (u, v) < prev:
                raise LoadError(f"edges[{i}]: edges not sorted")
            seen.add((u, v))
            prev = (u, v)
        return cls.from_edges(n, seen)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LoadError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")

    @classmethod
    def load(cls, path) -> "Graph":
        with open(path) as fh:
            return cls.from_json(fh.read())


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, [full & ~(1 << v) for v in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph._trusted(n, [0] * n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ParameterError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _rows_from_matrix(upper: np.ndarray) -> list[int]:
    n = upper.shape[0]
    adj = upper | upper.T
    if n == 0:
        return []
    # little-endian bit order so bit u of row v is column u
    packed = np.packbits(adj, axis=1, bitorder="little")
    return [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]


def random_graph(n: int, q: float, seed: int) -> Graph:
    """Erdős–Rényi graph where each pair is an edge with probability ``q``.

    For the non-edge convention G(n, 1-p), pass ``q = 1 - p``.
    """
    if not 0.0 <= q <= 1.0:
        raise ParameterError(f"edge probability must lie in [0, 1], got {q}")
    if n < 0:
        raise ParameterError(f"vertex count must be nonnegative, got {n}")
    rng = np_rng(seed)
    draws = rng.random((n, n))
    upper = np.triu(draws < q, k=1)
    return Graph._trusted(n, _rows_from_matrix(upper))


def random_bipartite_graph(n_left: int, n_right: int, q: float, seed: int) -> Graph:
    """Random bipartite graph; left part is ``0..n_left-1``."""
    if not 0.0 <= q <= 1.0:
        raise ParameterError(f"edge probability must lie in [0, 1], got {q}")
    n = n_left + n_right
    rng = np_rng(seed)
    block = rng.random((n_left, n_right)) < q
    upper = np.zeros((n, n), dtype=bool)
    upper[:n_left, n_left:] = block
    return Graph._trusted(n, _rows_from_matrix(upper))


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph induced by ``vertices``; ``labels`` records original indices."""
    verts = sorted(set(vertices))
    for v in verts:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        r = 0
        for u in iter_bits(g.rows[v]):
            i = pos.get(u)
            if i is not None:
                r |= 1 << i
        rows.append(r)
    labels = [g.labels[v] for v in verts]
    return Graph._trusted(len(verts), rows, labels)


def delete_vertices(g: Graph, vertices) -> Graph:
    drop = set(vertices)
    return induced_subgraph(g, [v for v in range(g.n) if v not in drop])


def turan_bound(n: int, d) -> Fraction:
    """Lower bound ``n / (d + 1)`` on the independence number.

    Exact when ``d`` is rational (int, Fraction); floats are converted
    exactly via their binary value.
    """
    if n < 0:
        raise ParameterError(f"vertex count must be nonnegative, got {n}")
    if not isinstance(d, Real):
        raise ParameterError(f"average degree must be real, got {d!r}")
    if d < 0:
        raise ParameterError(f"average degree must be nonnegative, got {d}")
    d = Fraction(d) if not isinstance(d, Rational) else Fraction(d.numerator, d.denominator)
    return Fraction(n) / (d + 1)
