"""Exact independent-set counting, size profiles and uniform sampling.

The counting engine applies ``I(G) = I(G - v) + I(G - N[v])`` to residual
vertex sets encoded as bitmasks, memoized per call. The size-stratified
version tracks the independence polynomial: the ``G - N[v]`` branch is
shifted up by one size because ``v`` joins every set counted there.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import ResourceError
from .graph import Graph, iter_bits
from .rng import py_rng

MAX_COUNT_VERTICES = 64
MAX_BRUTE_VERTICES = 20


@dataclass(frozen=True)
class ISProfile:
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def alpha(self) -> int:
        return len(self.counts) - 1

    @property
    def median(self) -> int:
        return median_alpha(self)

    def count(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    def to_dict(self) -> dict:
        return {
            "counts": [str(c) for c in self.counts],
            "total": str(self.total),
            "alpha": self.alpha,
            "median": self.median,
        }

    @classmethod
    def from_dict(cls, data) -> "ISProfile":
        return cls(tuple(int(c) for c in data["counts"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _profile(counts) -> ISProfile:
    counts = list(counts)
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return ISProfile(tuple(counts))


def median_alpha(profile: ISProfile) -> int:
    """Largest ``m`` with at least ``total/2`` independent sets of size >= m."""
    total = profile.total
    tail = 0
    for m in range(len(profile.counts) - 1, -1, -1):
        tail += profile.counts[m]
        if 2 * tail >= total:
            return m
    return 0


def _pivot(rows, mask):
    """Max-degree vertex inside ``mask`` (lowest index on ties) and its degree."""
    best, best_deg = -1, -1
    for v in iter_bits(mask):
        d = (rows[v] & mask).bit_count()
        if d > best_deg:
            best, best_deg = v, d
    return best, best_deg


class _Engine:
    """Per-graph memo tables; shared by counting and sampling."""

    def __init__(self, g: Graph, limit: int = MAX_COUNT_VERTICES):
        if g.n > limit:
            raise ResourceError(f"exact counting budget is {limit} vertices, graph has {g.n}")
        self.rows = g.rows
        self.closed = tuple(r | (1 << v) for v, r in enumerate(g.rows))
        self.full = (1 << g.n) - 1
        self._totals = {0: 1}
        self._polys = {0: (1,)}

    def total(self, mask: int) -> int:
        memo = self._totals
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v, d = _pivot(self.rows, mask)
        if d == 0:
            value = 1 << mask.bit_count()
        else:
            value = self.total(mask & ~(1 << v)) + self.total(mask & ~self.closed[v])
        memo[mask] = value
        return value

    def poly(self, mask: int) -> tuple[int, ...]:
        memo = self._polys
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v, d = _pivot(self.rows, mask)
        if d == 0:
            k = mask.bit_count()
            value = tuple(comb(k, i) for i in range(k + 1))
        else:
            a = self.poly(mask & ~(1 << v))
            b = self.poly(mask & ~self.closed[v])
            size = max(len(a), len(b) + 1)
            out = [0] * size
            for i, c in enumerate(a):
                out[i] += c
            for i, c in enumerate(b):
                out[i + 1] += c
            value = tuple(out)
        memo[mask] = value
        return value


def count_profile(g: Graph, max_vertices: int = MAX_COUNT_VERTICES) -> ISProfile:
    """Exact counts of independent sets of every size."""
    return _profile(_Engine(g, max_vertices).poly((1 << g.n) - 1))


def count_total(g: Graph, max_vertices: int = MAX_COUNT_VERTICES) -> int:
    """I(G), the number of independent sets including the empty set."""
    return _Engine(g, max_vertices).total((1 << g.n) - 1)


def independence_number(g: Graph) -> int:
    return count_profile(g).alpha


def brute_profile(g: Graph) -> ISProfile:
    """Reference profile by testing all ``2**n`` vertex subsets."""
    n = g.n
    if n > MAX_BRUTE_VERTICES:
        raise ResourceError(f"brute-force budget is {MAX_BRUTE_VERTICES} vertices, graph has {n}")
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for u, v in g.edges():
        ok &= ((masks >> u) & 1 & (masks >> v)) == 0
    sizes = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        sizes += (masks >> v) & 1
    counts = np.bincount(sizes[ok], minlength=n + 1)
    return _profile(int(c) for c in counts)


def count_sets_of_size(g: Graph, t: int) -> int:
    """Number of independent sets of size exactly ``t``.

    Depth-``t`` enumeration over candidate bitmasks: each step picks the
    next vertex above the last one among vertices not adjacent to the
    current set, so only independent sets of size <= t are visited.
    """
    if t < 0:
        return 0
    if t == 0:
        return 1
    rows = g.rows
    n = g.n

    def rec(cand, depth):
        if depth == 1:
            return cand.bit_count()
        total = 0
        while cand.bit_count() >= depth:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            total += rec(cand & ~rows[v], depth - 1)
        return total

    return rec((1 << n) - 1, t)


class IndependentSetSampler:
    """Exactly uniform sampler over all independent sets of ``g``.

    Walks the counting recursion: with residual vertex set ``S`` and pivot
    ``v``, ``v`` is included with probability ``I(S - N[v]) / I(S)``. The
    draw is an exact big-integer ``randrange`` so no float rounding enters.
    """

    def __init__(self, g: Graph, max_vertices: int = MAX_COUNT_VERTICES):
        self.g = g
        self._engine = _Engine(g, max_vertices)

    @property
    def total(self) -> int:
        return self._engine.total(self._engine.full)

    def sample(self, rng) -> frozenset[int]:
        eng = self._engine
        mask = eng.full
        chosen = []
        while mask:
            v, d = _pivot(eng.rows, mask)
            if d == 0:
                # remaining vertices are isolated: each is in or out with prob 1/2
                bits = rng.getrandbits(mask.bit_count())
                for i, u in enumerate(iter_bits(mask)):
                    if (bits >> i) & 1:
                        chosen.append(u)
                break
            with_v = mask & ~eng.closed[v]
            if rng.randrange(eng.total(mask)) < eng.total(with_v):
                chosen.append(v)
                mask = with_v
            else:
                mask &= ~(1 << v)
        return frozenset(chosen)


def sample_independent_set(g: Graph, seed: int) -> frozenset[int]:
    """One uniformly random independent set of ``g``; deterministic in ``seed``."""
    return IndependentSetSampler(g).sample(py_rng(seed))


def enumerate_independent_sets(g: Graph) -> list[frozenset[int]]:
    """All independent sets, for exact kernels on tiny graphs."""
    rows = g.rows
    out = []

    def rec(cand, current):
        out.append(frozenset(current))
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            current.append(v)
            rec(cand & ~rows[v], current)
            current.pop()

    rec((1 << g.n) - 1, [])
    return out
