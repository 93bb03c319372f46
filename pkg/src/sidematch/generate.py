"""Correlated stochastic-block-model instance generation.

An instance is drawn in phases, each phase consuming its own PRNG stream
derived from the single 64-bit instance seed: the underlying graph, the two
edge subsamples, the anonymizing permutation, seed-pair selection, and label
censoring. Varying one phase's stream leaves the others untouched, so e.g.
two seed-set draws on the same instance share the identical underlying graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams
from .graph import Graph, CommunityLabeling, GroundTruth, UNLABELED

# stream-split phases (SeedSequence spawn keys)
UNDERLYING = 0
SAMPLE1 = 1
SAMPLE2 = 2
PERMUTATION = 3
SEEDS = 4
CENSOR = 5


def phase_rng(rng_seed: int, phase: int) -> np.random.Generator:
    """Deterministic per-phase generator: PCG64 seeded by (seed, phase)."""
    ss = np.random.SeedSequence(entropy=int(rng_seed), spawn_key=(phase,))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class SbmParams:
    """SBM parameters; p/q may come from (a, b) via p = a·log n / n."""

    n: int
    k: int
    p: float
    q: float
    a: float | None = None
    b: float | None = None
    allow_equal: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParams(f"n must be >= 1, got {self.n}")
        if not (1 <= self.k <= self.n):
            raise InvalidParams(f"K must be in [1, n], got K={self.k}, n={self.n}")
        if not (0.0 <= self.q <= 1.0 and 0.0 <= self.p <= 1.0):
            raise InvalidParams(f"p={self.p}, q={self.q} outside [0, 1]")
        if self.p < self.q or (self.p == self.q and not self.allow_equal):
            raise InvalidParams(
                f"assortativity requires p > q (p={self.p}, q={self.q}); "
                "pass allow_equal=True for the p = q degenerate case"
            )

    @classmethod
    def from_coefficients(cls, n, k, a, b, allow_equal=False) -> "SbmParams":
        logn = math.log(n)
        return cls(n=n, k=k, p=a * logn / n, q=b * logn / n, a=a, b=b,
                   allow_equal=allow_equal)

    @classmethod
    def explicit(cls, n, k, p, q, allow_equal=False) -> "SbmParams":
        return cls(n=n, k=k, p=p, q=q, allow_equal=allow_equal)


def community_sizes(n: int, k: int) -> np.ndarray:
    """⌊n/K⌋ or ⌈n/K⌉ per community; the first n mod K communities get the extra."""
    sizes = np.full(k, n // k, dtype=np.int64)
    sizes[: n % k] += 1
    return sizes


def _sample_indices(rng: np.random.Generator, m: int, prob: float) -> np.ndarray:
    """A uniform random subset of {0..m-1} whose size is Binomial(m, prob).

    Distributionally identical to m independent Bernoulli(prob) picks, but
    O(count) instead of O(m). Sorted ascending.
    """
    if prob <= 0.0 or m == 0:
        return np.empty(0, dtype=np.int64)
    if prob >= 1.0:
        return np.arange(m, dtype=np.int64)
    c = int(rng.binomial(m, prob))
    if c == 0:
        return np.empty(0, dtype=np.int64)
    # draw with replacement, keep distinct, top up; overshoot cannot happen
    picked = np.unique(rng.integers(0, m, size=c))
    while picked.size < c:
        extra = rng.integers(0, m, size=c - picked.size)
        picked = np.unique(np.concatenate([picked, extra]))
    return picked


def _tri_decode(t: np.ndarray, sz: int) -> tuple[np.ndarray, np.ndarray]:
    """Invert the row-major enumeration of unordered pairs {i<j} of [sz]."""
    tt = t.astype(np.float64)
    i = ((2 * sz - 1) - np.sqrt((2 * sz - 1) ** 2 - 8 * tt)) // 2
    i = i.astype(np.int64)
    # float sqrt can land one row off; fix exactly in integers
    base = i * (2 * sz - i - 1) // 2
    i = np.where(base > t, i - 1, i)
    base = i * (2 * sz - i - 1) // 2
    i = np.where(base + (sz - i - 1) <= t, i + 1, i)
    base = i * (2 * sz - i - 1) // 2
    j = t - base + i + 1
    return i, j


def _sbm_edges(params: SbmParams, rng: np.random.Generator):
    """Edge arrays of one SBM draw, blocks in (community, community) order."""
    n, k, p, q = params.n, params.k, params.p, params.q
    sizes = community_sizes(n, k)
    starts = np.zeros(k + 1, dtype=np.int64)
    np.cumsum(sizes, out=starts[1:])
    us, vs = [np.empty(0, np.int64)], [np.empty(0, np.int64)]
    for c in range(k):
        sz = int(sizes[c])
        m = sz * (sz - 1) // 2
        t = _sample_indices(rng, m, p)
        if t.size:
            i, j = _tri_decode(t, sz)
            us.append(i + starts[c])
            vs.append(j + starts[c])
    for c1 in range(k):
        for c2 in range(c1 + 1, k):
            m = int(sizes[c1]) * int(sizes[c2])
            t = _sample_indices(rng, m, q)
            if t.size:
                us.append(t // sizes[c2] + starts[c1])
                vs.append(t % sizes[c2] + starts[c2])
    return np.concatenate(us), np.concatenate(vs), sizes


def gen_sbm(params: SbmParams, rng_seed: int) -> tuple[Graph, CommunityLabeling]:
    """One SBM draw: contiguous community blocks, deterministic in rng_seed."""
    rng = phase_rng(rng_seed, UNDERLYING)
    u, v, sizes = _sbm_edges(params, rng)
    g = Graph.from_edge_arrays(params.n, u, v)
    labels = np.repeat(np.arange(params.k, dtype=np.int32), sizes)
    return g, CommunityLabeling(params.k, labels)


@dataclass
class CorrelatedInstance:
    """A correlated pair (g1, g2) with hidden truth and consistent labelings."""

    g1: Graph
    g2: Graph
    truth: GroundTruth
    labeling1: CommunityLabeling
    labeling2: CommunityLabeling
    s: float
    params: SbmParams
    rng_seed: int
    underlying: Graph | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.g1.n


def _correlate(n, eu, ev, labels1, s, rng_seed) -> tuple:
    """Shared sampling core: subsample underlying edges twice, permute g2.

    Returns (g1, g2, truth, labeling2 labels array).
    """
    keep1 = phase_rng(rng_seed, SAMPLE1).random(eu.size) < s
    keep2 = phase_rng(rng_seed, SAMPLE2).random(eu.size) < s
    perm = phase_rng(rng_seed, PERMUTATION).permutation(n)
    g1 = Graph.from_edge_arrays(n, eu[keep1], ev[keep1])
    g2 = Graph.from_edge_arrays(n, perm[eu[keep2]], perm[ev[keep2]])
    truth = GroundTruth(perm)
    labels2 = np.empty(n, dtype=np.int32)
    labels2[perm] = labels1
    return g1, g2, truth, labels2


def gen_correlated(params: SbmParams, s: float, rng_seed: int) -> CorrelatedInstance:
    """Underlying SBM graph, two independent edge subsamples, anonymized g2."""
    if not (0.0 < s <= 1.0):
        raise InvalidParams(f"sampling parameter s must be in (0, 1], got {s}")
    rng = phase_rng(rng_seed, UNDERLYING)
    eu, ev, sizes = _sbm_edges(params, rng)
    labels1 = np.repeat(np.arange(params.k, dtype=np.int32), sizes)
    g1, g2, truth, labels2 = _correlate(params.n, eu, ev, labels1, s, rng_seed)
    underlying = Graph.from_edge_arrays(params.n, eu, ev)
    return CorrelatedInstance(
        g1=g1, g2=g2, truth=truth,
        labeling1=CommunityLabeling(params.k, labels1),
        labeling2=CommunityLabeling(params.k, labels2),
        s=s, params=params, rng_seed=rng_seed, underlying=underlying,
    )


@dataclass(frozen=True)
class SeedSet:
    """Pre-matched (left, right) vertex pairs handed to the attacker."""

    pairs: tuple

    @property
    def phi(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def sample_seed_set(inst: CorrelatedInstance, phi: int, rng_seed: int) -> SeedSet:
    """phi distinct correct pairs (i, truth(i)), uniform without replacement."""
    n = inst.n
    if not (0 <= phi <= n):
        raise InvalidParams(f"phi must be in [0, n], got phi={phi}, n={n}")
    rng = phase_rng(rng_seed, SEEDS)
    ids = np.sort(rng.choice(n, size=phi, replace=False))
    return SeedSet(tuple((int(i), int(inst.truth.perm[i])) for i in ids))


def sample_seeds_by_community(
    inst: CorrelatedInstance, per_community: int, rng_seed: int
) -> list[SeedSet]:
    """One SeedSet per community, `per_community` correct pairs from each."""
    if per_community < 1:
        raise InvalidParams("per_community must be >= 1")
    rng = phase_rng(rng_seed, SEEDS)
    out = []
    for members in inst.labeling1.members:
        if members.size < per_community:
            raise InvalidParams(
                f"community of size {members.size} cannot supply "
                f"{per_community} seeds"
            )
        ids = np.sort(rng.choice(members, size=per_community, replace=False))
        out.append(SeedSet(tuple((int(i), int(inst.truth.perm[i])) for i in ids)))
    return out


def censor_labels(
    labeling: CommunityLabeling, fraction_known: float, rng_seed: int
) -> CommunityLabeling:
    """Keep each vertex's label independently w.p. fraction_known."""
    if not (0.0 <= fraction_known <= 1.0):
        raise InvalidParams(f"fraction_known must be in [0, 1], got {fraction_known}")
    if fraction_known == 1.0:
        return labeling
    keep = phase_rng(rng_seed, CENSOR).random(labeling.n) < fraction_known
    labels = np.where(keep, labeling.labels, np.int32(UNLABELED))
    return CommunityLabeling(labeling.k, labels.astype(np.int32))


def censor_instance_labels(
    inst: CorrelatedInstance, fraction_known: float, rng_seed: int
) -> tuple[CommunityLabeling, CommunityLabeling]:
    """Censor both labelings consistently: one keep-mask drawn on g1 ids and
    transported through the truth, so a user's label is known in both graphs
    or in neither."""
    if not (0.0 <= fraction_known <= 1.0):
        raise InvalidParams(f"fraction_known must be in [0, 1], got {fraction_known}")
    if fraction_known == 1.0:
        return inst.labeling1, inst.labeling2
    keep = phase_rng(rng_seed, CENSOR).random(inst.n) < fraction_known
    lab1 = np.where(keep, inst.labeling1.labels, np.int32(UNLABELED))
    keep2 = np.empty(inst.n, dtype=bool)
    keep2[inst.truth.perm] = keep
    lab2 = np.where(keep2, inst.labeling2.labels, np.int32(UNLABELED))
    k = inst.labeling1.k
    return (
        CommunityLabeling(k, lab1.astype(np.int32)),
        CommunityLabeling(k, lab2.astype(np.int32)),
    )
