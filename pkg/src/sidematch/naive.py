"""Community-degree-vector matching: per-vertex nearest neighbor under the
coordinate-disagreement distance, restricted to community-compatible pairs.

The raw output deliberately keeps independent per-vertex argmins (two left
vertices may claim one right vertex); that raw form is exactly what the
two-threshold percolation consumes as its imperfect matching F. A greedy
injectivity pass is available separately for standalone evaluation.
"""

from __future__ import annotations

import numpy as np

from .errors import CommunityMismatch, EmptyCommunity, PartialLabeling
from .graph import (
    UNLABELED,
    CommunityLabeling,
    Graph,
    community_degree_matrix,
    community_degree_vector,
)

# provenance tags
PROV_UNMATCHED = -1
PROV_SEED = 0
PROV_PERCOLATED = 1
PROV_NAIVE = 2

_PROV_NAMES = {PROV_SEED: "seed", PROV_PERCOLATED: "percolated", PROV_NAIVE: "naive"}


class Matching:
    """Partial map left vertex -> right vertex with per-pair annotations.

    right[i] = matched right vertex or -1. Injectivity is enforced for every
    mode except 'naive-raw', where Algorithm 1's independent argmins may
    collide by design.
    """

    __slots__ = ("right", "mode", "provenance", "tie_flag", "delta")

    def __init__(self, right, mode, provenance=None, tie_flag=None, delta=None):
        right = np.asarray(right, dtype=np.int64)
        self.right = right
        self.mode = mode
        self.provenance = (
            np.full(right.size, PROV_UNMATCHED, dtype=np.int8)
            if provenance is None else np.asarray(provenance, dtype=np.int8)
        )
        self.tie_flag = (
            np.zeros(right.size, dtype=bool)
            if tie_flag is None else np.asarray(tie_flag, dtype=bool)
        )
        self.delta = delta
        if mode != "naive-raw":
            m = right[right >= 0]
            if np.unique(m).size != m.size:
                raise ValueError(f"mode {mode!r} requires an injective matching")

    @property
    def n(self) -> int:
        return int(self.right.size)

    @property
    def matched_count(self) -> int:
        return int((self.right >= 0).sum())

    @property
    def tie_count(self) -> int:
        return int(self.tie_flag.sum())

    def __call__(self, i: int) -> int | None:
        j = int(self.right[i])
        return None if j < 0 else j

    def pairs(self):
        for i in np.where(self.right >= 0)[0]:
            yield int(i), int(self.right[i])

    def provenance_name(self, i: int) -> str | None:
        return _PROV_NAMES.get(int(self.provenance[i]))

    def __repr__(self):
        return f"Matching(mode={self.mode!r}, matched={self.matched_count}/{self.n})"


def delta_distance(
    g1: Graph, g2: Graph,
    labeling1: CommunityLabeling, labeling2: CommunityLabeling,
    i: int, jprime: int,
) -> int:
    """Number of communities (own one excluded) where the two community
    degree vectors disagree."""
    c1, c2 = int(labeling1.labels[i]), int(labeling2.labels[jprime])
    if c1 == UNLABELED or c2 == UNLABELED:
        raise PartialLabeling(f"unlabeled endpoint in pair ({i}, {jprime})")
    if c1 != c2:
        raise CommunityMismatch(
            f"pair ({i}, {jprime}) spans communities {c1} != {c2}"
        )
    di = community_degree_vector(g1, labeling1, i)
    dj = community_degree_vector(g2, labeling2, jprime)
    neq = di != dj
    neq[c1] = False
    return int(neq.sum())


def _block_argmin(A: np.ndarray, B: np.ndarray, own: int, k: int):
    """Per-row argmin of the disagreement-count matrix between row sets A
    (left) and B (right), skipping coordinate `own`. Returns (argmin indices,
    min values, tie flags); argmin takes the first (= smallest id) minimum."""
    diff = np.zeros((A.shape[0], B.shape[0]), dtype=np.int16)
    for c in range(k):
        if c == own:
            continue
        diff += A[:, c][:, None] != B[:, c][None, :]
    best = diff.argmin(axis=1)
    rows = np.arange(A.shape[0])
    bestval = diff[rows, best]
    ties = (diff == bestval[:, None]).sum(axis=1) > 1
    return best, bestval, ties


def naive_match(
    g1: Graph, g2: Graph,
    labeling1: CommunityLabeling, labeling2: CommunityLabeling,
) -> Matching:
    """Match every left vertex to its distance-minimizing right vertex of the
    same community; ties broken toward the smallest right id and flagged."""
    if not (labeling1.is_total and labeling2.is_total):
        raise PartialLabeling("naive_match requires total labelings")
    k = labeling1.k
    D1 = community_degree_matrix(g1, labeling1)
    D2 = community_degree_matrix(g2, labeling2)
    right = np.full(g1.n, -1, dtype=np.int64)
    ties = np.zeros(g1.n, dtype=bool)
    delta = np.zeros(g1.n, dtype=np.int32)
    for c in range(k):
        m1 = labeling1.members[c]
        if m1.size == 0:
            continue
        m2 = labeling2.members[c]
        if m2.size == 0:
            raise EmptyCommunity(f"community {c} has no members in g2")
        best, bestval, tie = _block_argmin(D1[m1], D2[m2], c, k)
        right[m1] = m2[best]
        ties[m1] = tie
        delta[m1] = bestval
    prov = np.full(g1.n, PROV_NAIVE, dtype=np.int8)
    return Matching(right, "naive-raw", prov, ties, delta)


def naive_match_partial(
    g1: Graph, g2: Graph,
    labeling1: CommunityLabeling, labeling2: CommunityLabeling,
) -> Matching:
    """naive_match restricted to labeled-and-compatible pairs: unlabeled left
    vertices stay unmatched, unlabeled right vertices never appear as
    candidates, and unlabeled neighbors count toward no coordinate on either
    side (the symmetric drop policy)."""
    k = labeling1.k
    D1 = community_degree_matrix(g1, labeling1, require_total=False)
    D2 = community_degree_matrix(g2, labeling2, require_total=False)
    right = np.full(g1.n, -1, dtype=np.int64)
    ties = np.zeros(g1.n, dtype=bool)
    delta = np.zeros(g1.n, dtype=np.int32)
    prov = np.full(g1.n, PROV_UNMATCHED, dtype=np.int8)
    for c in range(k):
        m1 = labeling1.members[c]
        m2 = labeling2.members[c]
        if m1.size == 0 or m2.size == 0:
            continue
        best, bestval, tie = _block_argmin(D1[m1], D2[m2], c, k)
        right[m1] = m2[best]
        ties[m1] = tie
        delta[m1] = bestval
        prov[m1] = PROV_NAIVE
    return Matching(right, "naive-raw", prov, ties, delta)


def make_injective(matching: Matching) -> Matching:
    """Greedy injectivity pass: pairs claim right vertices in ascending
    distance order (ties by left id); losers become unmatched."""
    if matching.delta is None:
        raise ValueError("make_injective needs the per-pair distances")
    left_ids = np.where(matching.right >= 0)[0]
    order = left_ids[np.lexsort((left_ids, matching.delta[left_ids]))]
    right = np.full(matching.n, -1, dtype=np.int64)
    taken = set()
    for i in order.tolist():
        j = int(matching.right[i])
        if j not in taken:
            taken.add(j)
            right[i] = j
    prov = np.where(right >= 0, matching.provenance, np.int8(PROV_UNMATCHED))
    tie = matching.tie_flag & (right >= 0)
    return Matching(right, "injective", prov, tie, matching.delta)
