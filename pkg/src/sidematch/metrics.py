"""Run evaluation and closed-form theory bounds.

The published precision/recall both divide correct matches by n_int (the
giant-component size of the intersection graph); the printed "P = e/n_int" is
read as a typo for correct/n_int, since a precision above 1 is impossible and
the neighboring recall expression uses correct counts. The conventional
precision correct/matched is reported alongside, explicitly labeled, and is
the one meaningful for real-data error-rate reproduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentBound, InvalidParams
from .graph import GroundTruth
from .naive import Matching


@dataclass(frozen=True)
class MetricsReport:
    n: int
    matched_count: int
    correct_count: int
    f: float                      # matched / n
    e: float | None               # 1 - correct/matched; None when nothing matched
    precision: float | None       # correct / n_int  (paper definition)
    recall: float | None          # correct / n_int  (identical by definition)
    f1: float | None              # = precision under the paper definition
    precision_conv: float | None  # correct / matched (conventional, non-paper)
    f1_conv: float | None         # harmonic mean of precision_conv and recall
    n_int: int
    tie_count: int
    stalled: bool


def evaluate(
    matching: Matching,
    truth: GroundTruth,
    g_int_giant: np.ndarray,
    *,
    stalled: bool = False,
) -> MetricsReport:
    """Score a matching against the truth, with the intersection giant
    component supplying the precision/recall denominator."""
    n = matching.n
    mask = matching.right >= 0
    matched = int(mask.sum())
    correct = int((matching.right[mask] == truth.perm[mask]).sum())
    n_int = int(len(g_int_giant))
    f = matched / n
    e = None if matched == 0 else 1.0 - correct / matched
    if n_int > 0:
        precision = recall = f1 = correct / n_int
    else:
        precision = recall = f1 = None
    precision_conv = None if matched == 0 else correct / matched
    if precision_conv is None or recall is None:
        f1_conv = None
    elif precision_conv + recall == 0:
        f1_conv = 0.0
    else:
        f1_conv = 2 * precision_conv * recall / (precision_conv + recall)
    return MetricsReport(
        n=n,
        matched_count=matched,
        correct_count=correct,
        f=f,
        e=e,
        precision=precision,
        recall=recall,
        f1=f1,
        precision_conv=precision_conv,
        f1_conv=f1_conv,
        n_int=n_int,
        tie_count=matching.tie_count,
        stalled=stalled,
    )


def theorem1_b_bound(alpha: float, s: float) -> float:
    """Inter-community coefficient above which the community-degree matcher
    is asymptotically exact, for K = n^alpha: (2-a)/(2s(1-sqrt(1-s^2)))."""
    if not (0.0 <= alpha < 1.0):
        raise InvalidParams(f"alpha must be in [0, 1), got {alpha}")
    if s == 0.0:
        raise DivergentBound("bound diverges as s -> 0")
    if not (0.0 < s <= 1.0):
        raise InvalidParams(f"s must be in (0, 1], got {s}")
    return (2.0 - alpha) / (2.0 * s * (1.0 - math.sqrt(1.0 - s * s)))


def theorem2_seed_bound(n: int, k: int, p: float, q: float, r: int) -> float:
    """Per-community seed count above which community-rounds percolation
    matches without errors: (1-1/r)(K^r (r-1)! / (n (p+(K-1)q)^r))^(1/(r-1))."""
    if r < 2:
        raise InvalidParams(f"bound needs r >= 2 (exponent 1/(r-1)), got r={r}")
    if not (0.0 < p < 1.0 and 0.0 < q < 1.0):
        raise InvalidParams(f"p and q must be in (0, 1), got p={p}, q={q}")
    inner = (k ** r) * math.factorial(r - 1) / (n * (p + (k - 1) * q) ** r)
    return (1.0 - 1.0 / r) * inner ** (1.0 / (r - 1))


def theorem3_pf_bound(n: int, r_c: int) -> float:
    """Scale n^(r_c-3) (log n)^(-2 r_c) that the per-pair error probability of
    the imperfect matching must stay below for error-free two-threshold runs."""
    if r_c < 1:
        raise InvalidParams(f"r_c must be >= 1, got {r_c}")
    return n ** (r_c - 3) * math.log(n) ** (-2 * r_c)


def lemma1_exponent(b: float, s: float) -> float:
    """Polynomial decay exponent 2bs(1-sqrt(1-s^2)) of the probability that a
    wrong pair beats the correct pair in community-degree distance."""
    if not (0.0 < s <= 1.0):
        raise InvalidParams(f"s must be in (0, 1], got {s}")
    return 2.0 * b * s * (1.0 - math.sqrt(1.0 - s * s))
