"""Undirected graphs, community labelings, and the structural queries built on them.

Vertices are dense 0-based integers; community ids are dense 0-based as well
(one less than a 1-based community numbering). All types are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidEdge, InvalidParams, PartialLabeling, SizeMismatch

UNLABELED = -1


class Graph:
    """Undirected simple graph stored as per-vertex sorted neighbor lists.

    No self-loops, no duplicate neighbors. Internally keeps a CSR layout
    (indptr + flat neighbor array) for vectorized work; `adjacency` gives
    plain Python lists for tight loops.
    """

    __slots__ = ("n", "indptr", "flat", "_adj")

    def __init__(self, n: int, indptr: np.ndarray, flat: np.ndarray):
        self.n = int(n)
        self.indptr = indptr
        self.flat = flat
        self._adj = None

    @classmethod
    def from_edge_arrays(cls, n: int, u: np.ndarray, v: np.ndarray) -> "Graph":
        """Build from parallel endpoint arrays. Assumes endpoints valid,
        no self-loops, and no duplicate edges (generators guarantee this)."""
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        order = np.lexsort((dst, src))
        src = src[order]
        dst = dst[order]
        counts = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(n, indptr, dst.astype(np.int32))

    @property
    def adjacency(self) -> list[list[int]]:
        """Per-vertex sorted neighbor lists (built lazily, then cached)."""
        if self._adj is None:
            flat = self.flat.tolist()
            ptr = self.indptr.tolist()
            self._adj = [flat[ptr[i]:ptr[i + 1]] for i in range(self.n)]
        return self._adj

    def neighbors(self, v: int) -> np.ndarray:
        return self.flat[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def num_edges(self) -> int:
        return int(self.flat.size) // 2

    def has_edge(self, u: int, v: int) -> bool:
        lo, hi = self.indptr[u], self.indptr[u + 1]
        k = lo + np.searchsorted(self.flat[lo:hi], v)
        return k < hi and self.flat[k] == v

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """All edges once, as (u, v) arrays with u < v."""
        src = np.repeat(np.arange(self.n), np.diff(self.indptr))
        mask = src < self.flat
        return src[mask], self.flat[mask].astype(np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.flat, other.flat)
        )

    def __hash__(self):
        raise TypeError("Graph is not hashable")

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def build_graph(n: int, edges) -> Graph:
    """Canonical graph from an edge list; duplicates collapse, self-loops reject."""
    seen = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise InvalidEdge(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) out of range for n={n}")
        seen.add((u, v) if u < v else (v, u))
    if seen:
        arr = np.array(sorted(seen), dtype=np.int64)
        return Graph.from_edge_arrays(n, arr[:, 0], arr[:, 1])
    return Graph.from_edge_arrays(n, np.empty(0, np.int64), np.empty(0, np.int64))


class CommunityLabeling:
    """Total or partial map vertex -> community id, with per-community members.

    `labels[v]` is the community of v, or UNLABELED (-1). `members[k]` lists
    the labeled vertices of community k in ascending order.
    """

    __slots__ = ("k", "labels", "members")

    def __init__(self, k: int, labels: np.ndarray):
        if k < 1:
            raise InvalidParams(f"need at least one community, got k={k}")
        labels = np.asarray(labels, dtype=np.int32)
        if labels.size and (labels.max() >= k or labels.min() < UNLABELED):
            raise InvalidParams(f"community id outside [0, {k}) in labeling")
        self.k = int(k)
        self.labels = labels
        self.members = [np.where(labels == c)[0] for c in range(k)]

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def is_total(self) -> bool:
        return bool((self.labels != UNLABELED).all())

    @property
    def labeled_count(self) -> int:
        return int((self.labels != UNLABELED).sum())

    def label_of(self, v: int) -> int | None:
        c = int(self.labels[v])
        return None if c == UNLABELED else c

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommunityLabeling):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)

    def __repr__(self):
        return f"CommunityLabeling(n={self.n}, k={self.k}, labeled={self.labeled_count})"


class GroundTruth:
    """The hidden correct bijection between the two vertex sets."""

    __slots__ = ("perm", "_inv")

    def __init__(self, perm: np.ndarray):
        perm = np.asarray(perm, dtype=np.int64)
        n = perm.size
        if not np.array_equal(np.sort(perm), np.arange(n)):
            raise InvalidParams("ground truth is not a permutation of 0..n-1")
        self.perm = perm
        self._inv = None

    @property
    def n(self) -> int:
        return int(self.perm.size)

    @property
    def inverse(self) -> np.ndarray:
        if self._inv is None:
            inv = np.empty_like(self.perm)
            inv[self.perm] = np.arange(self.perm.size)
            self._inv = inv
        return self._inv

    def __call__(self, i: int) -> int:
        return int(self.perm[i])

    def __repr__(self):
        return f"GroundTruth(n={self.n})"


def community_degree_vector(g: Graph, labeling: CommunityLabeling, v: int) -> np.ndarray:
    """Per-community neighbor counts of v, length K (own community included).

    Entries sum to degree(v). Callers wanting the own-community entry dropped
    do so themselves. Requires a total labeling.
    """
    if labeling.n != g.n or not labeling.is_total:
        raise PartialLabeling("community_degree_vector requires a total labeling")
    out = np.zeros(labeling.k, dtype=np.int64)
    np.add.at(out, labeling.labels[g.neighbors(v)], 1)
    return out


def community_degree_matrix(
    g: Graph, labeling: CommunityLabeling, *, require_total: bool = True
) -> np.ndarray:
    """(n, K) matrix of per-community neighbor counts for every vertex.

    With require_total=False, unlabeled neighbors simply do not count
    (the partial-label policy of the matchers).
    """
    if require_total and not labeling.is_total:
        raise PartialLabeling("labeling is not total")
    D = np.zeros((g.n, labeling.k), dtype=np.int32)
    rows = np.repeat(np.arange(g.n), np.diff(g.indptr))
    cols = labeling.labels[g.flat]
    if not require_total:
        mask = cols != UNLABELED
        rows, cols = rows[mask], cols[mask]
    np.add.at(D, (rows, cols), 1)
    return D


def intersection_graph(g1: Graph, g2: Graph, truth: GroundTruth) -> Graph:
    """Graph on V(g1) keeping edge uv iff uv in g1 and truth(u)truth(v) in g2."""
    if g1.n != g2.n or truth.n != g1.n:
        raise SizeMismatch(f"vertex counts differ: {g1.n}, {g2.n}, truth {truth.n}")
    u, v = g1.edge_arrays()
    if u.size == 0:
        return Graph.from_edge_arrays(g1.n, u, v)
    mu, mv = truth.perm[u], truth.perm[v]
    key = np.minimum(mu, mv) * g2.n + np.maximum(mu, mv)
    u2, v2 = g2.edge_arrays()
    if u2.size == 0:
        return Graph.from_edge_arrays(g1.n, u2, v2)
    key2 = np.sort(u2 * g2.n + v2)
    pos = np.searchsorted(key2, key)
    keep = (pos < key2.size) & (key2[np.minimum(pos, key2.size - 1)] == key)
    return Graph.from_edge_arrays(g1.n, u[keep], v[keep])


def largest_component(g: Graph) -> tuple[np.ndarray, int]:
    """Vertex set of the largest connected component (ties: the one holding
    the smallest vertex id), with its size. Empty graph gives (empty, 0)."""
    if g.n == 0:
        return np.empty(0, dtype=np.int64), 0
    comp = np.full(g.n, -1, dtype=np.int64)
    adj = g.adjacency
    best_root, best_size, cid = -1, 0, 0
    for start in range(g.n):
        if comp[start] >= 0:
            continue
        stack = [start]
        comp[start] = cid
        size = 1
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if comp[y] < 0:
                    comp[y] = cid
                    size += 1
                    stack.append(y)
        if size > best_size:
            best_size, best_root = size, cid
        cid += 1
    verts = np.where(comp == best_root)[0]
    return verts, int(verts.size)


def induced_subgraph(g: Graph, vertices: np.ndarray) -> tuple[Graph, np.ndarray]:
    """Subgraph induced by `vertices`, reindexed densely.

    Returns the new graph plus the old-id array (new id i held old id
    `old_ids[i]`); vertices are kept in ascending old-id order.
    """
    old_ids = np.sort(np.asarray(vertices, dtype=np.int64))
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[old_ids] = np.arange(old_ids.size)
    u, v = g.edge_arrays()
    keep = (remap[u] >= 0) & (remap[v] >= 0)
    return Graph.from_edge_arrays(old_ids.size, remap[u[keep]], remap[v[keep]]), old_ids


def bfs_reachable(g: Graph, start: int) -> np.ndarray:
    """Vertices reachable from `start` (used to cross-check components)."""
    seen = np.zeros(g.n, dtype=bool)
    seen[start] = True
    frontier = [start]
    adj = g.adjacency
    while frontier:
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    nxt.append(y)
        frontier = nxt
    return np.where(seen)[0]
