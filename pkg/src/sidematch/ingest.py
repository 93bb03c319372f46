"""Edge-list and community-label file ingestion.

Edge files: whitespace-separated token pairs, '#' comment lines; tokens may
be arbitrary strings and are densified to 0-based ids in first-appearance
order. Label files: "vertex community" token pairs against the same id map;
community tokens are densified in numeric order when every token is an
integer, lexicographic order otherwise, so emitting and re-ingesting a
labeling is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .graph import (
    UNLABELED,
    CommunityLabeling,
    Graph,
    build_graph,
    induced_subgraph,
    largest_component,
)


@dataclass
class IngestResult:
    graph: Graph
    tokens: list[str]          # dense id -> original token
    id_of: dict[str, int]      # original token -> dense id
    self_loops_dropped: int


def ingest_edge_list(path: str) -> IngestResult:
    """Read an undirected edge list; dedupe, drop (and count) self-loops."""
    tokens: list[str] = []
    id_of: dict[str, int] = {}
    edges = set()
    self_loops = 0
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(
                    f"expected two tokens, got {len(parts)}: {raw.rstrip()!r}",
                    line_no=line_no,
                )
            uv = []
            for tok in parts:
                vid = id_of.get(tok)
                if vid is None:
                    vid = len(tokens)
                    id_of[tok] = vid
                    tokens.append(tok)
                uv.append(vid)
            u, v = uv
            if u == v:
                self_loops += 1
                continue
            edges.add((u, v) if u < v else (v, u))
    n = len(tokens)
    if edges:
        arr = np.array(sorted(edges), dtype=np.int64)
        graph = Graph.from_edge_arrays(n, arr[:, 0], arr[:, 1])
    else:
        graph = build_graph(n, [])
    return IngestResult(graph, tokens, id_of, self_loops)


def _order_tokens(tokens) -> list[str]:
    """Numeric sort when every token is an integer, else lexicographic."""
    toks = list(tokens)
    try:
        return sorted(toks, key=int)
    except ValueError:
        return sorted(toks)


def read_label_assignments(path: str, id_of: dict[str, int]) -> dict[int, str]:
    """Raw vertex-id -> community-token map from a labels file."""
    assign: dict[int, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(
                    f"expected 'vertex community', got {raw.rstrip()!r}",
                    line_no=line_no,
                )
            vtok, ctok = parts
            vid = id_of.get(vtok)
            if vid is None:
                raise ParseError(
                    f"unknown vertex token {vtok!r}", line_no=line_no
                )
            assign[vid] = ctok
    return assign


def densify_labels(
    assign: dict[int, str], n: int
) -> tuple[CommunityLabeling, list[str]]:
    """CommunityLabeling over [0, n) from a vertex -> community-token map."""
    ordered = _order_tokens(set(assign.values()))
    cid = {tok: i for i, tok in enumerate(ordered)}
    labels = np.full(n, UNLABELED, dtype=np.int32)
    for vid, ctok in assign.items():
        labels[vid] = cid[ctok]
    return CommunityLabeling(len(ordered), labels), ordered


def ingest_labels(
    path: str, id_of: dict[str, int], n: int
) -> tuple[CommunityLabeling, list[str]]:
    """Labels file -> labeling with densified community ids."""
    return densify_labels(read_label_assignments(path, id_of), n)


def emit_labels(path: str, labeling: CommunityLabeling, vertex_tokens,
                community_tokens):
    """Inverse of ingest_labels; unlabeled vertices are omitted."""
    with open(path, "w", encoding="utf-8") as fh:
        for vid, lab in enumerate(labeling.labels.tolist()):
            if lab != UNLABELED:
                fh.write(f"{vertex_tokens[vid]} {community_tokens[lab]}\n")


def restrict_to_lcc(
    ingested: IngestResult,
    labeling: CommunityLabeling | None = None,
    community_tokens: list[str] | None = None,
):
    """Largest connected component, reindexed; the labeling (if given) is
    restricted to it and its community ids re-densified over the surviving
    community tokens. Returns (graph, labeling|None, vertex_tokens,
    community_tokens|None)."""
    verts, _ = largest_component(ingested.graph)
    sub, old_ids = induced_subgraph(ingested.graph, verts)
    vertex_tokens = [ingested.tokens[i] for i in old_ids.tolist()]
    if labeling is None:
        return sub, None, vertex_tokens, None
    assign = {}
    for new_id, old_id in enumerate(old_ids.tolist()):
        lab = int(labeling.labels[old_id])
        if lab != UNLABELED:
            assign[new_id] = community_tokens[lab]
    new_labeling, new_tokens = densify_labels(assign, sub.n)
    return sub, new_labeling, vertex_tokens, new_tokens
