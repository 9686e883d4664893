"""Correspondence assignments (L, M), cover graphs and partial colorings.

A partial coloring is a plain ``dict`` mapping vertex -> color. It is
valid when every color comes from the vertex's list and no edge ``uv``
with both ends colored has ``(phi[u], phi[v])`` in its matching.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import LoadError, ParameterError
from .graph import Graph
from .rng import np_rng


class CorrespondenceAssignment:
    """Per-vertex color lists plus a partial matching on every edge.

    ``matching(u, v)`` maps colors of ``u`` to their partner colors of
    ``v``; both orientations are stored so the lookup is O(1).
    """

    __slots__ = ("base", "lists", "_match")

    def __init__(self, base: Graph, lists, matchings):
        if len(lists) != base.n:
            raise ParameterError(f"expected {base.n} lists, got {len(lists)}")
        norm = []
        for v, lst in enumerate(lists):
            colors = sorted(set(lst))
            if len(colors) != len(list(lst)):
                raise ParameterError(f"list of vertex {v} repeats a color")
            for c in colors:
                if isinstance(c, bool) or not isinstance(c, int) or c < 1:
                    raise ParameterError(f"vertex {v}: colors must be positive integers, got {c!r}")
            norm.append(tuple(colors))
        self.base = base
        self.lists = tuple(norm)
        self._match = {}
        for u, v in base.edges():
            self._match[(u, v)] = {}
            self._match[(v, u)] = {}
        for key, pairs in matchings.items():
            u, v = key
            if not base.adjacent(u, v):
                raise ParameterError(f"matching given for non-edge ({u}, {v})")
            fwd, back = self._match[(u, v)], self._match[(v, u)]
            for cu, cv in pairs:
                if cu not in self.lists[u] or cv not in self.lists[v]:
                    raise ParameterError(f"edge ({u}, {v}): pair ({cu}, {cv}) outside the lists")
                if cu in fwd or cv in back:
                    raise ParameterError(f"edge ({u}, {v}): pair ({cu}, {cv}) breaks the matching")
                fwd[cu] = cv
                back[cv] = cu

    def matching(self, u: int, v: int) -> dict:
        return self._match[(u, v)]

    def partner(self, u: int, c: int, v: int):
        """Color of ``v`` matched with ``(u, c)``, or ``None``."""
        return self._match[(u, v)].get(c)

    def pairs(self, u: int, v: int) -> list[tuple[int, int]]:
        return sorted(self._match[(u, v)].items())

    def is_ell_assignment(self, ell: int) -> bool:
        return all(len(lst) >= ell for lst in self.lists)

    def __eq__(self, other):
        if not isinstance(other, CorrespondenceAssignment):
            return NotImplemented
        return (self.base == other.base and self.lists == other.lists
                and self._match == other._match)

    def __repr__(self):
        return f"CorrespondenceAssignment(n={self.base.n}, edges={self.base.num_edges})"

    def to_dict(self) -> dict:
        return {
            "lists": [list(lst) for lst in self.lists],
            "matchings": [
                {"u": u, "v": v, "pairs": [list(p) for p in self.pairs(u, v)]}
                for u, v in self.base.edges()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, base: Graph, data) -> "CorrespondenceAssignment":
        if not isinstance(data, dict):
            raise LoadError("assignment document must be a JSON object")
        lists = data.get("lists")
        if not isinstance(lists, list) or len(lists) != base.n:
            raise LoadError(f"field 'lists' must be a list of {base.n} color lists")
        for v, lst in enumerate(lists):
            if not isinstance(lst, list) or not lst:
                raise LoadError(f"lists[{v}]: expected a nonempty list of colors")
        matchings = {}
        raw = data.get("matchings", [])
        if not isinstance(raw, list):
            raise LoadError("field 'matchings' must be a list")
        for i, entry in enumerate(raw):
            try:
                u, v, pairs = entry["u"], entry["v"], entry["pairs"]
            except (TypeError, KeyError):
                raise LoadError(f"matchings[{i}]: expected object with u, v, pairs") from None
            if not (isinstance(u, int) and isinstance(v, int) and 0 <= u < base.n and 0 <= v < base.n):
                raise LoadError(f"matchings[{i}]: endpoints out of range")
            if (u, v) in matchings or (v, u) in matchings:
                raise LoadError(f"matchings[{i}]: duplicate entry for edge ({u}, {v})")
            if not isinstance(pairs, list) or not all(
                    isinstance(p, list) and len(p) == 2 for p in pairs):
                raise LoadError(f"matchings[{i}]: pairs must be [cu, cv] lists")
            matchings[(u, v)] = [tuple(p) for p in pairs]
        try:
            return cls(base, lists, matchings)
        except ParameterError as exc:
            raise LoadError(str(exc)) from None

    @classmethod
    def from_json(cls, base: Graph, text: str) -> "CorrespondenceAssignment":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LoadError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(base, data)

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")

    @classmethod
    def load(cls, base: Graph, path) -> "CorrespondenceAssignment":
        with open(path) as fh:
            return cls.from_json(base, fh.read())


def random_assignment(g: Graph, ell: int, seed: int) -> CorrespondenceAssignment:
    """Random ell-correspondence assignment.

    Every list is ``{1..ell}``; each edge (in sorted order) receives an
    independent uniform perfect matching drawn by a Fisher-Yates shuffle.
    """
    if ell < 1:
        raise ParameterError(f"ell must be >= 1, got {ell}")
    rng = np_rng(seed)
    lists = [range(1, ell + 1)] * g.n
    matchings = {}
    for u, v in g.edges():
        perm = rng.permutation(ell)
        matchings[(u, v)] = [(c + 1, int(perm[c]) + 1) for c in range(ell)]
    return CorrespondenceAssignment(g, lists, matchings)


def from_lists(g: Graph, lists) -> CorrespondenceAssignment:
    """List-coloring instance: every shared color ``c`` is matched to itself."""
    lists = [set(lst) for lst in lists]
    for v, lst in enumerate(lists):
        if not lst:
            raise ParameterError(f"list of vertex {v} is empty")
    matchings = {(u, v): [(c, c) for c in sorted(lists[u] & lists[v])] for u, v in g.edges()}
    return CorrespondenceAssignment(g, lists, matchings)


@dataclass(frozen=True)
class CoverGraph:
    nodes: tuple[tuple[int, int], ...]
    graph: Graph
    index: dict = field(compare=False, repr=False)

    def base_of(self, i: int) -> int:
        return self.nodes[i][0]

    def node_index(self, node) -> int:
        return self.index[tuple(node)]


def build_cover_graph(ca: CorrespondenceAssignment) -> CoverGraph:
    """Graph on (vertex, color) nodes whose edges are the matched pairs."""
    nodes = tuple((v, c) for v in range(ca.base.n) for c in ca.lists[v])
    index = {node: i for i, node in enumerate(nodes)}
    edges = []
    for u, v in ca.base.edges():
        for cu, cv in ca.pairs(u, v):
            edges.append((index[(u, cu)], index[(v, cv)]))
    return CoverGraph(nodes, Graph.from_edges(len(nodes), edges), index)


def is_plausible(cg: CoverGraph, nodes) -> bool:
    """True when no two nodes share a base vertex."""
    bases = [tuple(x)[0] for x in nodes]
    return len(bases) == len(set(bases))


def usable(ca: CorrespondenceAssignment, phi: dict, v: int, c: int) -> bool:
    """Whether coloring ``v`` with ``c`` keeps ``phi`` valid."""
    for w in ca.base.neighbors(v):
        cw = phi.get(w)
        if cw is not None and ca.partner(v, c, w) == cw:
            return False
    return True


def available_colors(ca: CorrespondenceAssignment, phi: dict, u: int) -> list[int]:
    """Colors of ``L(u)`` not matched to the color of any colored neighbor."""
    blocked = set()
    for w in ca.base.neighbors(u):
        cw = phi.get(w)
        if cw is not None:
            back = ca.partner(w, cw, u)
            if back is not None:
                blocked.add(back)
    return [c for c in ca.lists[u] if c not in blocked]


@dataclass
class Validation:
    ok: bool
    violations: list[str]

    def __bool__(self):
        return self.ok


def validate(ca: CorrespondenceAssignment, phi: dict) -> Validation:
    problems = []
    for v, c in sorted(phi.items()):
        if not 0 <= v < ca.base.n:
            problems.append(f"vertex {v} does not exist")
        elif c not in ca.lists[v]:
            problems.append(f"vertex {v}: color {c} not in its list")
    for u, v in ca.base.edges():
        cu, cv = phi.get(u), phi.get(v)
        if cu is not None and cv is not None and ca.partner(u, cu, v) == cv:
            problems.append(f"edge ({u}, {v}): colors ({cu}, {cv}) are matched")
    return Validation(not problems, problems)


def is_complete_coloring(ca: CorrespondenceAssignment, phi: dict) -> bool:
    return len(phi) == ca.base.n and validate(ca, phi).ok


# ------------------------------------------------------------- relabeling


def apply_relabel(ca: CorrespondenceAssignment, perms: dict) -> CorrespondenceAssignment:
    """Rename colors vertex-wise; ``perms[v]`` maps old color -> new color."""
    def ren(v, c):
        p = perms.get(v)
        return p[c] if p is not None else c

    lists = [[ren(v, c) for c in ca.lists[v]] for v in range(ca.base.n)]
    matchings = {(u, v): [(ren(u, a), ren(v, b)) for a, b in ca.pairs(u, v)]
                 for u, v in ca.base.edges()}
    return CorrespondenceAssignment(ca.base, lists, matchings)


def invert_perms(perms: dict) -> dict:
    return {v: {new: old for old, new in p.items()} for v, p in perms.items()}


def relabel_towards(ca: CorrespondenceAssignment, u: int):
    """Rename neighbor colors so every matching at ``u`` is diagonal.

    Returns ``(view, perms)``. In the view, ``(u, c)`` is only ever matched
    to ``(v, c)``. A color of ``v`` unmatched towards ``u`` keeps its name
    unless that name is taken by a matched color, in which case it gets a
    fresh label above every color in use. ``perms`` covers neighbors of
    ``u`` only; apply ``invert_perms(perms)`` to go back.
    """
    perms = {}
    top = max((c for lst in ca.lists for c in lst), default=0)
    for v in ca.base.neighbors(u):
        back = ca.matching(v, u)
        perm = dict(back)
        taken = set(perm.values())
        for c in ca.lists[v]:
            if c in perm:
                continue
            if c in taken:
                top += 1
                perm[c] = top
            else:
                perm[c] = c
            taken.add(perm[c])
        perms[v] = perm
    return apply_relabel(ca, perms), perms


def relabel_coloring(phi: dict, perms: dict) -> dict:
    return {v: perms[v][c] if v in perms else c for v, c in phi.items()}
