"""Monte-Carlo benchmark harness.

Each (parameter combination, trial index) pair derives a 64-bit instance seed
by hashing base_seed, the instance-defining parameters, and the trial index.
Algorithm choice, seed count, and label-censoring fraction are deliberately
excluded from the hash, so different matchers and side-information levels are
compared on identical random instances.
"""

from __future__ import annotations

import hashlib
import sys
import time
from dataclasses import dataclass, replace

import numpy as np

from .config import ExperimentConfig
from .errors import InvalidParams
from .generate import (
    CorrelatedInstance,
    SbmParams,
    _correlate,
    censor_instance_labels,
    gen_correlated,
    sample_seed_set,
    sample_seeds_by_community,
)
from .graph import CommunityLabeling, Graph, intersection_graph, largest_component
from .ingest import ingest_edge_list, ingest_labels, restrict_to_lcc
from .metrics import MetricsReport, evaluate
from .naive import naive_match, naive_match_partial
from .percolation import TwoThreshold, Uniform, percolate, percolate_community_rounds

CSV_VERSION = "sidematch-sweep-v1"

_BASE_COLUMNS = (
    "algorithm", "mode", "n", "K", "a", "b", "p", "q", "s", "phi",
    "fraction_known", "r_c", "r_m", "trial", "seed", "matched", "correct",
    "f", "e", "precision", "recall", "f1", "precision_conv", "f1_conv",
    "n_int", "tie_count", "stalled", "percolated",
)


def derive_seed(base_seed: int, combo: dict, trial: int) -> int:
    """64-bit instance seed from the instance-defining parameters."""
    parts = ",".join(f"{k}={combo[k]}" for k in sorted(combo))
    blob = f"{base_seed}|{parts}|{trial}".encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "little")


def instance_combo(cfg: ExperimentConfig) -> dict:
    """The parameters that define the random instance (and nothing else)."""
    if cfg.mode == "real":
        return {"mode": "real", "s": repr(float(cfg.s))}
    combo = {
        "n": cfg.n, "K": cfg.K,
        "a": repr(float(cfg.a)), "b": repr(float(cfg.b)),
        "s": repr(float(cfg.s)),
    }
    if cfg.p is not None:
        combo["p"] = repr(float(cfg.p))
    if cfg.q is not None:
        combo["q"] = repr(float(cfg.q))
    return combo


def sbm_params(cfg: ExperimentConfig) -> SbmParams:
    if cfg.p is not None and cfg.q is not None:
        return SbmParams.explicit(cfg.n, cfg.K, cfg.p, cfg.q,
                                  allow_equal=cfg.p == cfg.q)
    return SbmParams.from_coefficients(cfg.n, cfg.K, cfg.a, cfg.b)


def realpair_from_underlying(
    g: Graph, labeling: CommunityLabeling | None, s: float, rng_seed: int
) -> CorrelatedInstance:
    """Treat an ingested graph as the underlying G and sample a correlated
    pair from it, exactly as the synthetic generator does."""
    if not (0.0 < s <= 1.0):
        raise InvalidParams(f"sampling parameter s must be in (0, 1], got {s}")
    n = g.n
    eu, ev = g.edge_arrays()
    if labeling is None:
        labeling = CommunityLabeling(1, np.zeros(n, dtype=np.int32))
    g1, g2, truth, labels2 = _correlate(n, eu, ev, labeling.labels, s, rng_seed)
    params = SbmParams.explicit(n, labeling.k, 1.0, 0.0)
    return CorrelatedInstance(
        g1=g1, g2=g2, truth=truth,
        labeling1=labeling,
        labeling2=CommunityLabeling(labeling.k, labels2),
        s=s, params=params, rng_seed=rng_seed, underlying=g,
    )


@dataclass
class TrialResult:
    report: MetricsReport
    percolated: bool
    runtime_ms: float
    seed: int


def run_trial(
    cfg: ExperimentConfig,
    trial: int,
    real_underlying: tuple[Graph, CommunityLabeling | None] | None = None,
) -> TrialResult:
    """One full pipeline run: generate, optionally censor labels, build the
    imperfect matching when the algorithm wants one, percolate, evaluate."""
    t0 = time.perf_counter()
    seed = derive_seed(cfg.base_seed, instance_combo(cfg), trial)
    if cfg.mode == "real":
        g, labeling = real_underlying
        inst = realpair_from_underlying(g, labeling, cfg.s, seed)
    else:
        inst = gen_correlated(sbm_params(cfg), cfg.s, seed)

    lab1, lab2 = censor_instance_labels(inst, cfg.fraction_known, seed)
    total = lab1.is_total and lab2.is_total

    algo = cfg.algorithm
    stalled = False
    if algo == "naive":
        matching = naive_match(inst.g1, inst.g2, lab1, lab2) if total \
            else naive_match_partial(inst.g1, inst.g2, lab1, lab2)
    elif algo in ("A1", "A3"):
        seeds = sample_seed_set(inst, cfg.phi, seed)
        res = percolate(inst.g1, inst.g2, seeds, Uniform(cfg.effective_r()),
                        community_constraint=(lab1, lab2))
        matching, stalled = res.matching, res.stalled
    elif algo == "A2":
        F = naive_match(inst.g1, inst.g2, lab1, lab2) if total \
            else naive_match_partial(inst.g1, inst.g2, lab1, lab2)
        seeds = sample_seed_set(inst, cfg.phi, seed)
        constraint = (lab1, lab2) if total else None
        res = percolate(inst.g1, inst.g2, seeds,
                        TwoThreshold(cfg.r_c, cfg.r_m, F),
                        community_constraint=constraint)
        matching, stalled = res.matching, res.stalled
    elif algo == "community-rounds":
        seeds = sample_seeds_by_community(inst, cfg.phi, seed)
        res = percolate_community_rounds(inst.g1, inst.g2, seeds,
                                         cfg.effective_r(), lab1, lab2)
        matching, stalled = res.matching, res.stalled
    else:
        raise InvalidParams(f"unknown algorithm {algo!r}")

    g_int = intersection_graph(inst.g1, inst.g2, inst.truth)
    giant, _ = largest_component(g_int)
    report = evaluate(matching, inst.truth, giant, stalled=stalled)
    percolated = report.n_int > 0 and (
        report.matched_count >= cfg.percolation_success_fraction * report.n_int
    )
    runtime_ms = (time.perf_counter() - t0) * 1000.0
    return TrialResult(report, percolated, runtime_ms, seed)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _row(cfg: ExperimentConfig, trial: int, out: TrialResult) -> list[str]:
    params = sbm_params(cfg) if cfg.mode == "synthetic" else None
    rep = out.report
    if cfg.algorithm == "naive":
        r_c = r_m = None
    elif cfg.algorithm == "A2":
        r_c, r_m = cfg.r_c, cfg.r_m
    else:
        r_c = r_m = cfg.effective_r()
    values = {
        "algorithm": cfg.algorithm,
        "mode": cfg.mode,
        "n": cfg.n if cfg.mode == "synthetic" else rep.n,
        "K": cfg.K if cfg.mode == "synthetic" else None,
        "a": cfg.a if cfg.mode == "synthetic" and cfg.p is None else None,
        "b": cfg.b if cfg.mode == "synthetic" and cfg.q is None else None,
        "p": params.p if params is not None else None,
        "q": params.q if params is not None else None,
        "s": cfg.s,
        "phi": cfg.phi if cfg.algorithm != "naive" else None,
        "fraction_known": cfg.fraction_known,
        "r_c": r_c,
        "r_m": r_m,
        "trial": trial,
        "seed": out.seed,
        "matched": rep.matched_count,
        "correct": rep.correct_count,
        "f": rep.f,
        "e": rep.e,
        "precision": rep.precision,
        "recall": rep.recall,
        "f1": rep.f1,
        "precision_conv": rep.precision_conv,
        "f1_conv": rep.f1_conv,
        "n_int": rep.n_int,
        "tie_count": rep.tie_count,
        "stalled": rep.stalled,
        "percolated": out.percolated,
    }
    row = [_cell(values[c]) for c in _BASE_COLUMNS]
    if cfg.emit_runtime:
        row.append(repr(out.runtime_ms))
    return row


def _load_real(cfg: ExperimentConfig):
    ingested = ingest_edge_list(cfg.edges)
    labeling = tokens = None
    if cfg.labels:
        labeling, tokens = ingest_labels(cfg.labels, ingested.id_of,
                                         ingested.graph.n)
    sub, lab, _, _ = restrict_to_lcc(ingested, labeling, tokens)
    return sub, lab


def run_sweep(cfg: ExperimentConfig, stream=None) -> int:
    """Run every (combination, trial) cell in order, writing CSV rows as they
    finish. Returns the number of data rows written."""
    close = False
    if stream is None:
        if cfg.output == "-":
            stream = sys.stdout
        else:
            stream = open(cfg.output, "w", encoding="utf-8", newline="")
            close = True
    try:
        real_underlying = _load_real(cfg) if cfg.mode == "real" else None
        stream.write(f"# {CSV_VERSION}\n")
        for line in cfg.echo_lines():
            stream.write(line + "\n")
        cols = list(_BASE_COLUMNS) + (["runtime_ms"] if cfg.emit_runtime else [])
        stream.write(",".join(cols) + "\n")
        rows = 0
        for combo_cfg in cfg.combinations():
            for trial in range(cfg.trials):
                out = run_trial(combo_cfg, trial, real_underlying)
                stream.write(",".join(_row(combo_cfg, trial, out)) + "\n")
                rows += 1
        return rows
    finally:
        if close:
            stream.close()


@dataclass
class ThresholdResult:
    threshold: int | None     # None: not found up to phi_max
    phi_max: int
    probes: list[tuple[int, int, int]]  # (phi, successes, trials), probe order


def find_percolation_threshold(cfg: ExperimentConfig,
                               phi_max: int | None = None) -> ThresholdResult:
    """Smallest phi whose success rate over `trials` runs reaches 1/2,
    located by exponential ramp then bisection. Probes are deterministic in
    (config, phi), so revisiting a phi returns the cached outcome."""
    if phi_max is None:
        phi_max = cfg.phi_max
    if cfg.mode == "synthetic":
        phi_max = min(phi_max, cfg.n)
    real_underlying = _load_real(cfg) if cfg.mode == "real" else None
    cache: dict[int, int] = {}
    probes: list[tuple[int, int, int]] = []

    def successes(phi: int) -> int:
        if phi not in cache:
            probe_cfg = replace(cfg, phi=phi)
            wins = 0
            for trial in range(cfg.trials):
                out = run_trial(probe_cfg, trial, real_underlying)
                wins += out.percolated
            cache[phi] = wins
            probes.append((phi, wins, cfg.trials))
        return cache[phi]

    def ok(phi: int) -> bool:
        return 2 * successes(phi) >= cfg.trials

    hi, lo = 1, 0
    while not ok(hi):
        if hi >= phi_max:
            return ThresholdResult(None, phi_max, probes)
        lo = hi  # last failed probe
        hi = min(hi * 2, phi_max)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    if lo >= 1:
        ok(lo)  # ensure the phi-1 probe is on record
    return ThresholdResult(hi, phi_max, probes)
