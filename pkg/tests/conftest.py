import numpy as np
import pytest


def random_edges(rng, n, density):
    """Random undirected edge list (no loops, no dups) on n vertices."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                edges.append((u, v))
    return edges


def random_labels(rng, n, k):
    """Total labeling hitting every community at least once (n >= k)."""
    labels = np.concatenate([np.arange(k), rng.integers(0, k, size=n - k)])
    rng.shuffle(labels)
    return labels.astype(np.int32)


def random_pair(rng, n, k, density=None):
    """Two independent random graphs on [n] with a shared community sizing:
    labels2 is labels1 pushed through a random permutation, so community
    populations agree across sides. Returns dict of parts."""
    if density is None:
        density = min(0.5, 3.0 / n)
    e1 = random_edges(rng, n, density)
    e2 = random_edges(rng, n, density)
    labels1 = random_labels(rng, n, k)
    perm = rng.permutation(n)
    labels2 = np.empty(n, dtype=np.int32)
    labels2[perm] = labels1
    return {"n": n, "k": k, "edges1": e1, "edges2": e2,
            "labels1": labels1, "labels2": labels2, "perm": perm}


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
