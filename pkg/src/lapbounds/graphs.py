"""Simple undirected weighted graphs with the degree machinery used by the bounds.

A graph is immutable after construction: vertex count ``n`` plus parallel
numpy arrays (u, v, w) holding the edges in canonical lexicographic order
with u < v. Degrees, CSR adjacency and the sorted degree view are computed
lazily and cached, so repeated bound evaluations on the same graph stay
cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "WeightedGraph",
    "DegreeView",
    "new_graph",
    "degree_view",
    "complement_unweighted",
    "normalize",
    "complement_normalized",
    "induced_subgraph",
    "top_set",
    "bottom_set",
    "is_clique_plus_isolated",
    "clique_plus_isolated_size",
    "co_clique_plus_isolated_size",
    "complete",
    "path",
    "cycle",
    "star",
    "clique_plus_isolated",
    "star_plus_edges",
]


class WeightedGraph:
    """Simple undirected graph with positive edge weights.

    Vertices are 0-based ids in [0, n). Unweighted graphs use weight
    exactly 1.0 on every edge. No self-loops, no duplicate edges.
    """

    def __init__(self, n: int, u: np.ndarray, v: np.ndarray, w: np.ndarray):
        # Internal constructor: arrays must already be canonical
        # (u < v, lexicographically sorted, validated). Use new_graph().
        self.n = int(n)
        self.edge_u = u
        self.edge_v = v
        self.edge_w = w
        for a in (u, v, w):
            a.setflags(write=False)

    @property
    def num_edges(self) -> int:
        return self.edge_u.size

    @cached_property
    def degrees(self) -> np.ndarray:
        """Weighted degree of every vertex: sum of incident edge weights."""
        d = np.bincount(self.edge_u, weights=self.edge_w, minlength=self.n)
        d += np.bincount(self.edge_v, weights=self.edge_w, minlength=self.n)
        d.setflags(write=False)
        return d

    @cached_property
    def is_unweighted(self) -> bool:
        """True when every edge weight equals 1.0 exactly."""
        return bool(np.all(self.edge_w == 1.0))

    @cached_property
    def max_weight(self) -> float:
        """Largest edge weight, 0.0 for an edgeless graph."""
        return float(self.edge_w.max()) if self.num_edges else 0.0

    @cached_property
    def total_weight(self) -> float:
        return float(self.edge_w.sum())

    @cached_property
    def adjacency_csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(indptr, neighbors, weights) with both edge directions, neighbor-sorted."""
        ends = np.concatenate([self.edge_u, self.edge_v])
        other = np.concatenate([self.edge_v, self.edge_u])
        wts = np.concatenate([self.edge_w, self.edge_w])
        order = np.lexsort((other, ends))
        counts = np.bincount(ends, minlength=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return indptr, other[order], wts[order]

    def edge_weights(self) -> dict[tuple[int, int], float]:
        """Dict view {(i, j): w} with i < j. Intended for small graphs."""
        return {
            (int(i), int(j)): float(w)
            for i, j, w in zip(self.edge_u, self.edge_v, self.edge_w)
        }

    def edge_list(self) -> list[tuple[int, int, float]]:
        return [
            (int(i), int(j), float(w))
            for i, j, w in zip(self.edge_u, self.edge_v, self.edge_w)
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.edge_u, other.edge_u)
            and np.array_equal(self.edge_v, other.edge_v)
            and np.array_equal(self.edge_w, other.edge_w)
        )

    __hash__ = None  # mutable-feeling equality; graphs are not dict keys

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, edges={self.num_edges})"


def _canonical(n: int, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> WeightedGraph:
    """Build a graph from trusted arrays, sorting into canonical order."""
    u = np.ascontiguousarray(u, dtype=np.int64)
    v = np.ascontiguousarray(v, dtype=np.int64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    order = np.lexsort((hi, lo))
    return WeightedGraph(n, lo[order], hi[order], w[order])


def new_graph(
    n: int, weighted_edges: Iterable[tuple] = ()
) -> WeightedGraph:
    """Create a validated graph from (i, j) or (i, j, w) tuples.

    Rejects self-loops, duplicate edges (in either orientation),
    non-positive weights and out-of-range vertex ids.
    """
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    us, vs, ws = [], [], []
    for e in weighted_edges:
        if len(e) == 2:
            i, j = e
            w = 1.0
        elif len(e) == 3:
            i, j, w = e
        else:
            raise ValueError(f"edge must be (i, j) or (i, j, w), got {e!r}")
        us.append(i)
        vs.append(j)
        ws.append(w)
    u = np.asarray(us, dtype=np.int64).reshape(-1)
    v = np.asarray(vs, dtype=np.int64).reshape(-1)
    w = np.asarray(ws, dtype=np.float64).reshape(-1)
    if u.size:
        if ((u < 0) | (u >= n) | (v < 0) | (v >= n)).any():
            bad = int(np.argmax((u < 0) | (u >= n) | (v < 0) | (v >= n)))
            raise ValueError(
                f"edge ({u[bad]}, {v[bad]}) has a vertex id outside [0, {n})"
            )
        if (u == v).any():
            bad = int(np.argmax(u == v))
            raise ValueError(f"self-loop at vertex {u[bad]} is not allowed")
        if (w <= 0).any() or not np.isfinite(w).all():
            bad = int(np.argmax((w <= 0) | ~np.isfinite(w)))
            raise ValueError(
                f"edge ({u[bad]}, {v[bad]}) has non-positive or non-finite "
                f"weight {w[bad]}"
            )
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        keys = lo * n + hi
        order = np.argsort(keys, kind="stable")
        if keys.size > 1 and (np.diff(keys[order]) == 0).any():
            bad = order[int(np.argmax(np.diff(keys[order]) == 0))]
            raise ValueError(f"duplicate edge ({lo[bad]}, {hi[bad]})")
        return WeightedGraph(n, lo[order], hi[order], w[order])
    return WeightedGraph(n, u, v, w)


@dataclass(frozen=True)
class DegreeView:
    """Ascending degree sequence together with the permutation realizing it.

    degrees[k] is the degree of vertex perm[k]; ties are broken by
    ascending vertex id so the permutation is deterministic.
    """

    degrees: np.ndarray
    perm: np.ndarray

    def __post_init__(self):
        self.degrees.setflags(write=False)
        self.perm.setflags(write=False)

    def d(self, m: int) -> float:
        """m-th smallest degree, 1-based."""
        return float(self.degrees[m - 1])

    @property
    def smallest(self) -> float:
        return float(self.degrees[0])

    @property
    def largest(self) -> float:
        return float(self.degrees[-1])


def degree_view(G: WeightedGraph) -> DegreeView:
    """Sorted degree sequence of G with a stable (degree, vertex id) tie-break."""
    cached = getattr(G, "_degree_view", None)
    if cached is None:
        deg = G.degrees
        perm = np.argsort(deg, kind="stable").astype(np.int64)
        cached = DegreeView(deg[perm].copy(), perm)
        G._degree_view = cached
    return cached


def complement_unweighted(G: WeightedGraph) -> WeightedGraph:
    """Classical complement: edge present iff absent in G. Unit weights only."""
    if not G.is_unweighted:
        raise ValueError("complement_unweighted requires all weights equal to 1")
    present = set(zip(G.edge_u.tolist(), G.edge_v.tolist()))
    pairs = [(i, j) for i, j in combinations(range(G.n), 2) if (i, j) not in present]
    u = np.array([p[0] for p in pairs], dtype=np.int64)
    v = np.array([p[1] for p in pairs], dtype=np.int64)
    return WeightedGraph(G.n, u, v, np.ones(len(pairs)))


def normalize(G: WeightedGraph) -> tuple[WeightedGraph, float]:
    """Divide all weights by the maximal weight a; returns (scaled graph, a).

    An edgeless graph is returned unchanged with a = 0 (no maximal weight
    exists; every eigenvalue is 0 so downstream bounds stay correct).
    """
    a = G.max_weight
    if a == 0.0:
        return G, 0.0
    if a == 1.0 and G.is_unweighted:
        return G, 1.0
    return WeightedGraph(G.n, G.edge_u, G.edge_v, G.edge_w / a), a


def complement_normalized(G: WeightedGraph) -> WeightedGraph:
    """Weighted complement of a graph with weights in (0, 1].

    For every vertex pair the output weight is 1 minus the input weight
    (0 for absent pairs); pairs whose resulting weight is exactly 0 carry
    no edge. Quadratic in n by nature; meant for oracle-scale graphs.
    """
    if G.num_edges and float(G.edge_w.max()) > 1.0:
        raise ValueError("complement_normalized requires weights in (0, 1]")
    wmap = G.edge_weights()
    us, vs, ws = [], [], []
    for i, j in combinations(range(G.n), 2):
        w = 1.0 - wmap.get((i, j), 0.0)
        if w > 0.0:
            us.append(i)
            vs.append(j)
            ws.append(w)
    return WeightedGraph(
        G.n,
        np.array(us, dtype=np.int64),
        np.array(vs, dtype=np.int64),
        np.array(ws, dtype=np.float64),
    )


def induced_subgraph(G: WeightedGraph, S: Sequence[int]) -> WeightedGraph:
    """Subgraph induced by vertex set S, reindexed by sorted position.

    Keeps exactly the edges with both ends in S, weights preserved.
    """
    S = np.unique(np.asarray(S, dtype=np.int64))
    if S.size == 0:
        raise ValueError("induced_subgraph requires a nonempty vertex set")
    if S[0] < 0 or S[-1] >= G.n:
        raise ValueError(f"vertex set not contained in [0, {G.n})")
    member = np.zeros(G.n, dtype=bool)
    member[S] = True
    keep = member[G.edge_u] & member[G.edge_v]
    relabel = np.full(G.n, -1, dtype=np.int64)
    relabel[S] = np.arange(S.size)
    return WeightedGraph(
        S.size, relabel[G.edge_u[keep]], relabel[G.edge_v[keep]], G.edge_w[keep].copy()
    )


def _check_index(m: int, n: int) -> None:
    if not 1 <= m <= n:
        raise ValueError(f"index m={m} out of range [1, {n}]")


def top_set(G: WeightedGraph, m: int) -> np.ndarray:
    """The n-m+1 vertices of largest degree (stable tie-break), sorted by id."""
    _check_index(m, G.n)
    return np.sort(degree_view(G).perm[m - 1 :])


def bottom_set(G: WeightedGraph, m: int) -> np.ndarray:
    """The m vertices of smallest degree (stable tie-break), sorted by id."""
    _check_index(m, G.n)
    return np.sort(degree_view(G).perm[:m])


def clique_plus_isolated_size(G: WeightedGraph) -> Optional[int]:
    """Clique size k if G is a complete graph on k vertices plus n-k
    isolated vertices, else None. Requires unit weights to qualify."""
    if not G.is_unweighted:
        return None
    deg = G.degrees
    if G.num_edges == 0:
        return 1
    k = G.n - int(np.count_nonzero(deg == 0.0))
    # Every non-isolated vertex must have full degree inside a k-clique;
    # that forces all edges into the k-set, which is then complete.
    if k >= 2 and int(np.count_nonzero(deg == float(k - 1))) == k:
        return k
    return None


def co_clique_plus_isolated_size(G: WeightedGraph) -> Optional[int]:
    """m such that the complement of G is a clique on m vertices plus n-m
    isolated vertices, else None. Computed from G's degrees without
    materializing the complement."""
    if not G.is_unweighted:
        return None
    deg = G.degrees
    n = G.n
    full = float(n - 1)
    if bool(np.all(deg == full)):
        return 1  # complete graph; complement is edgeless
    m = n - int(np.count_nonzero(deg == full))
    # Complement degrees are n-1-deg: the m candidate vertices must form a
    # clique there, i.e. have degree exactly n-m here, and everyone else
    # must be complement-isolated (full degree here).
    if m >= 2 and int(np.count_nonzero(deg == float(n - m))) == m:
        return m
    return None


def is_clique_plus_isolated(G: WeightedGraph, m: int) -> bool:
    """True iff G is a complete graph on n-m+1 vertices plus m-1 isolated
    vertices. Unweighted graphs only."""
    if not G.is_unweighted:
        raise ValueError("is_clique_plus_isolated requires an unweighted graph")
    _check_index(m, G.n)
    k = clique_plus_isolated_size(G)
    return k is not None and m == G.n - k + 1


# Named constructors


def complete(n: int) -> WeightedGraph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    pairs = np.array(list(combinations(range(n), 2)), dtype=np.int64).reshape(-1, 2)
    return WeightedGraph(n, pairs[:, 0], pairs[:, 1], np.ones(len(pairs)))


def path(n: int) -> WeightedGraph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    u = np.arange(n - 1, dtype=np.int64)
    return WeightedGraph(n, u, u + 1, np.ones(n - 1))


def cycle(n: int) -> WeightedGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3 to stay simple")
    u = np.arange(n, dtype=np.int64)
    v = np.concatenate([np.arange(1, n, dtype=np.int64), [0]])
    return _canonical(n, u, v, np.ones(n))


def star(n: int) -> WeightedGraph:
    """Star with hub 0 and n-1 leaves."""
    if n < 1:
        raise ValueError("star needs n >= 1")
    u = np.zeros(n - 1, dtype=np.int64)
    v = np.arange(1, n, dtype=np.int64)
    return WeightedGraph(n, u, v, np.ones(n - 1))


def clique_plus_isolated(k: int, i: int) -> WeightedGraph:
    """Disjoint union of a complete graph on k vertices and i isolated ones."""
    if k < 1 or i < 0:
        raise ValueError("clique_plus_isolated needs k >= 1 and i >= 0")
    pairs = np.array(list(combinations(range(k), 2)), dtype=np.int64).reshape(-1, 2)
    return WeightedGraph(k + i, pairs[:, 0], pairs[:, 1], np.ones(len(pairs)))


def star_plus_edges(
    n: int, extra: Iterable[tuple[int, int]] = ()
) -> WeightedGraph:
    """Star with hub 0 plus extra edges between distinct leaf pairs."""
    if n < 2:
        raise ValueError("star_plus_edges needs n >= 2")
    us = [0] * (n - 1)
    vs = list(range(1, n))
    seen = set()
    for i, j in extra:
        if i == j:
            raise ValueError(f"extra pair ({i}, {j}) is a self-loop")
        a, b = min(i, j), max(i, j)
        if a < 1 or b > n - 1:
            raise ValueError(f"extra pair ({i}, {j}) must join two leaves in [1, {n})")
        if (a, b) in seen:
            raise ValueError(f"duplicate extra pair ({a}, {b})")
        seen.add((a, b))
        us.append(a)
        vs.append(b)
    return _canonical(
        n,
        np.array(us, dtype=np.int64),
        np.array(vs, dtype=np.int64),
        np.ones(len(us)),
    )
