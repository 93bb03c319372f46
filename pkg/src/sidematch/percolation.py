"""Seed-driven percolation matching with pluggable per-pair thresholds.

One core spreading loop serves all the experiment variants: uniform threshold
(within-community matching at r=1 or r=2), the two-threshold form driven by an
imperfect matching F (threshold r_c when F agrees with the candidate pair, r_m
otherwise), and a community-rounds scheduler that spreads one pair per
community per round and commits matches between rounds.

Scores only ever grow; a pair whose endpoint gets matched is frozen — its
entry is purged lazily the next time it is touched, and it can never match.
Matching decisions happen at increment time only: a pair that crosses its
threshold while an endpoint is busy stays unmatched forever.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, InvalidSeeds, PartialLabeling
from .graph import UNLABELED, CommunityLabeling, Graph
from .naive import Matching, PROV_PERCOLATED, PROV_SEED


@dataclass(frozen=True)
class Uniform:
    """Every pair matches at score r."""

    r: int

    def __post_init__(self):
        if self.r < 1:
            raise InvalidParams(f"threshold r must be >= 1, got {self.r}")


@dataclass(frozen=True)
class TwoThreshold:
    """Pairs dictated by the imperfect matching F match at r_c, others at r_m."""

    r_c: int
    r_m: int
    F: Matching

    def __post_init__(self):
        if not (1 <= self.r_c < self.r_m):
            raise InvalidParams(
                f"need 1 <= r_c < r_m, got r_c={self.r_c}, r_m={self.r_m}"
            )


class ScoreTable:
    """Sparse pair scores keyed by i*n+j; absent means zero."""

    __slots__ = ("n", "scores")

    def __init__(self, n: int):
        self.n = n
        self.scores = {}

    def get(self, i: int, j: int) -> int:
        return self.scores.get(i * self.n + j, 0)

    def __len__(self):
        return len(self.scores)


@dataclass
class PercolationResult:
    matching: Matching
    steps: int
    frontier_history: list[int] = field(repr=False)
    stalled: bool
    increments: int

    @property
    def matched_count(self) -> int:
        return self.matching.matched_count


def candidate_pairs(g1, g2, u, v, constraint=None, left=None, right=None):
    """Reference enumeration of the pairs marked when (u, v) spreads:
    N(u) x N(v), label-equal under `constraint` = (labeling1, labeling2),
    minus pairs with an endpoint already matched per `left`/`right`
    (arrays mapping vertex -> partner or -1). Ascending (i, j)."""
    lab1 = lab2 = None
    if constraint is not None:
        lab1, lab2 = constraint
    for i in g1.neighbors(u).tolist():
        if left is not None and left[i] >= 0:
            continue
        li = None
        if lab1 is not None:
            li = int(lab1.labels[i])
            if li == UNLABELED:
                continue
        for j in g2.neighbors(v).tolist():
            if right is not None and right[j] >= 0:
                continue
            if lab2 is not None and int(lab2.labels[j]) != li:
                continue
            yield i, j


def _check_seeds(seeds, n):
    pairs = list(seeds)
    lefts = [i for i, _ in pairs]
    rights = [j for _, j in pairs]
    if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
        raise InvalidSeeds("seed pairs repeat an endpoint")
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidSeeds(f"seed pair ({i}, {j}) out of range")
    return pairs


def percolate(
    g1: Graph,
    g2: Graph,
    seeds,
    policy,
    community_constraint: tuple[CommunityLabeling, CommunityLabeling] | None = None,
) -> PercolationResult:
    """Spread from the seed pairs until the queue empties or everything on
    the left is matched. FIFO over matched-but-unspread pairs, seeds first in
    their given order; each spread marks the candidate pairs snapshotted at
    dequeue time in ascending (i, j) order."""
    n = g1.n
    pairs = _check_seeds(seeds, n)
    two = isinstance(policy, TwoThreshold)
    if not pairs and not two:
        raise InvalidSeeds("uniform-threshold percolation needs at least one seed")
    if two:
        r_c, r_m = policy.r_c, policy.r_m
        F = policy.F.right.tolist()
    else:
        r_c = r_m = policy.r
        F = None

    adj1, adj2 = g1.adjacency, g2.adjacency
    if community_constraint is not None:
        lab1 = community_constraint[0].labels.tolist()
        lab2 = community_constraint[1].labels.tolist()
    else:
        lab1 = lab2 = None

    left = [-1] * n   # left[i] = matched right partner of i
    right = [-1] * n  # right[j] = matched left partner of j
    prov = np.full(n, -1, dtype=np.int8)
    queue: list[tuple[int, int]] = []
    for i, j in pairs:
        left[i] = j
        right[j] = i
        prov[i] = PROV_SEED
        queue.append((i, j))

    table = ScoreTable(n)
    scores = table.scores
    frontier: list[int] = []
    increments = 0
    nmatched = len(pairs)
    head = 0
    while head < len(queue) and nmatched < n:
        u, v = queue[head]
        head += 1
        newly = 0
        cand_i = [i for i in adj1[u] if left[i] < 0]
        if lab1 is not None:
            buckets: dict[int, list[int]] = {}
            for j in adj2[v]:
                if right[j] < 0:
                    lj = lab2[j]
                    if lj != UNLABELED:
                        buckets.setdefault(lj, []).append(j)
            for i in cand_i:
                js = buckets.get(lab1[i])
                if not js:
                    continue
                fi = F[i] if F is not None else -2
                for j in js:
                    increments += 1
                    key = i * n + j
                    if left[i] >= 0 or right[j] >= 0:
                        scores.pop(key, None)  # frozen pair, purge lazily
                        continue
                    sc = scores.get(key, 0) + 1
                    if sc >= (r_c if j == fi else r_m):
                        scores.pop(key, None)
                        left[i] = j
                        right[j] = i
                        prov[i] = PROV_PERCOLATED
                        queue.append((i, j))
                        nmatched += 1
                        newly += 1
                    else:
                        scores[key] = sc
        else:
            js_all = [j for j in adj2[v] if right[j] < 0]
            for i in cand_i:
                fi = F[i] if F is not None else -2
                for j in js_all:
                    increments += 1
                    key = i * n + j
                    if left[i] >= 0 or right[j] >= 0:
                        scores.pop(key, None)
                        continue
                    sc = scores.get(key, 0) + 1
                    if sc >= (r_c if j == fi else r_m):
                        scores.pop(key, None)
                        left[i] = j
                        right[j] = i
                        prov[i] = PROV_PERCOLATED
                        queue.append((i, j))
                        nmatched += 1
                        newly += 1
                    else:
                        scores[key] = sc
        frontier.append(newly)

    matching = Matching(np.array(left, dtype=np.int64), "percolation", prov)
    return PercolationResult(
        matching=matching,
        steps=head,
        frontier_history=frontier,
        stalled=nmatched < n,
        increments=increments,
    )


def percolate_community_rounds(
    g1: Graph,
    g2: Graph,
    seeds_per_community,
    r: int,
    labeling1: CommunityLabeling,
    labeling2: CommunityLabeling,
) -> PercolationResult:
    """Round-based scheduler: each round, one not-yet-spread matched pair per
    community spreads (community-constrained marks); the pairs that crossed
    the threshold are committed together at the end of the round in ascending
    (i, j) order, skipping any whose endpoint a prior commit already took."""
    if r < 1:
        raise InvalidParams(f"threshold r must be >= 1, got {r}")
    if not (labeling1.is_total and labeling2.is_total):
        raise PartialLabeling("community-rounds percolation requires total labelings")
    n = g1.n
    k = labeling1.k
    if len(seeds_per_community) != k:
        raise InvalidSeeds(
            f"need one seed set per community: got {len(seeds_per_community)} for K={k}"
        )
    all_pairs = []
    for c, seed_set in enumerate(seeds_per_community):
        got = list(seed_set)
        if not got:
            raise InvalidSeeds(f"community {c} has no seed")
        for i, j in got:
            if int(labeling1.labels[i]) != c or int(labeling2.labels[j]) != c:
                raise InvalidSeeds(f"seed ({i}, {j}) not in community {c}")
        all_pairs.extend(got)
    _check_seeds(all_pairs, n)

    lab1 = labeling1.labels.tolist()
    lab2 = labeling2.labels.tolist()
    adj1, adj2 = g1.adjacency, g2.adjacency

    left = [-1] * n
    right = [-1] * n
    prov = np.full(n, -1, dtype=np.int8)
    queues: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    heads = [0] * k
    for c, seed_set in enumerate(seeds_per_community):
        for i, j in seed_set:
            left[i] = j
            right[j] = i
            prov[i] = PROV_SEED
            queues[c].append((i, j))

    table = ScoreTable(n)
    scores = table.scores
    frontier: list[int] = []
    increments = 0
    nmatched = sum(len(q) for q in queues)
    rounds = 0
    while nmatched < n:
        pending: list[int] = []
        pending_seen = set()
        spread_any = False
        for c in range(k):
            if heads[c] >= len(queues[c]):
                continue
            u, v = queues[c][heads[c]]
            heads[c] += 1
            spread_any = True
            cand_i = [i for i in adj1[u] if left[i] < 0]
            buckets: dict[int, list[int]] = {}
            for j in adj2[v]:
                if right[j] < 0:
                    buckets.setdefault(lab2[j], []).append(j)
            for i in cand_i:
                js = buckets.get(lab1[i])
                if not js:
                    continue
                for j in js:
                    increments += 1
                    key = i * n + j
                    if left[i] >= 0 or right[j] >= 0:
                        scores.pop(key, None)
                        continue
                    sc = scores.get(key, 0) + 1
                    scores[key] = sc
                    if sc >= r and key not in pending_seen:
                        pending_seen.add(key)
                        pending.append(key)
        if not spread_any:
            break
        rounds += 1
        committed = 0
        for key in sorted(pending):
            i, j = divmod(key, n)
            if left[i] >= 0 or right[j] >= 0:
                continue
            scores.pop(key, None)
            left[i] = j
            right[j] = i
            prov[i] = PROV_PERCOLATED
            queues[lab1[i]].append((i, j))
            nmatched += 1
            committed += 1
        frontier.append(committed)

    matching = Matching(np.array(left, dtype=np.int64), "percolation", prov)
    return PercolationResult(
        matching=matching,
        steps=rounds,
        frontier_history=frontier,
        stalled=nmatched < n,
        increments=increments,
    )
