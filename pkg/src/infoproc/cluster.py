"""Complete-linkage hierarchical clustering with dendrogram export.

Cluster distance is the maximum pairwise Euclidean distance between member
vectors. Ties are broken deterministically: among equally distant cluster
pairs, the pair whose (smallest member label, other smallest member label)
tuple is lexicographically least merges first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from infoproc.errors import DomainError


@dataclass
class Dendrogram:
    """Agglomerative merge history. Leaves get ids 0..n-1 (positions in
    ``leaves``); merge k creates cluster id n+k."""

    leaves: list
    merges: list[tuple[int, int, float]]


def complete_linkage(vectors: Mapping) -> Dendrogram:
    """Cluster labeled vectors under max-distance (complete) linkage."""
    labels = list(vectors.keys())
    if len(labels) < 2:
        raise DomainError("need at least two vectors")
    mat = np.asarray([np.asarray(vectors[k], dtype=float) for k in labels])
    if mat.ndim != 2:
        raise DomainError("vectors must share one dimension")
    n = len(labels)
    diff = mat[:, None, :] - mat[None, :, :]
    total = 2 * n - 1
    # pairwise complete-linkage distances over all (eventual) cluster ids,
    # maintained via the max-linkage update rule
    big = np.full((total, total), np.inf)
    big[:n, :n] = np.sqrt((diff * diff).sum(axis=-1))
    np.fill_diagonal(big, np.inf)
    min_label = {i: labels[i] for i in range(n)}
    active = list(range(n))
    merges: list[tuple[int, int, float]] = []
    for next_id in range(n, total):
        ids = np.asarray(active)
        sub = big[np.ix_(ids, ids)]
        iu, ju = np.triu_indices(len(ids), 1)
        vals = sub[iu, ju]
        h = vals.min()
        ties = np.nonzero(vals == h)[0]
        best = None
        for k in ties:
            a, b = int(ids[iu[k]]), int(ids[ju[k]])
            la, lb = min_label[a], min_label[b]
            key = (min(la, lb), max(la, lb))
            if best is None or key < best[0]:
                best = (key, a, b)
        _, a, b = best
        merges.append((a, b, float(h)))
        big[next_id, ids] = np.maximum(big[a, ids], big[b, ids])
        big[ids, next_id] = big[next_id, ids]
        big[next_id, next_id] = np.inf
        min_label[next_id] = min(min_label[a], min_label[b])
        active = [c for c in active if c not in (a, b)] + [next_id]
    return Dendrogram(leaves=labels, merges=merges)


def _build_tree(d: Dendrogram):
    n = len(d.leaves)
    nodes: dict[int, dict] = {
        i: {"label": d.leaves[i], "height": 0.0} for i in range(n)
    }
    for k, (a, b, h) in enumerate(d.merges):
        nodes[n + k] = {"left": nodes[a], "right": nodes[b], "height": float(h)}
    return nodes[n + len(d.merges) - 1]


def _newick(node: dict, parent_height: float) -> str:
    length = parent_height - node["height"]
    if "label" in node:
        return f"{node['label']}:{length:.12g}"
    inner = f"({_newick(node['left'], node['height'])},{_newick(node['right'], node['height'])})"
    return f"{inner}:{length:.12g}"


def export_dendrogram(d: Dendrogram, format: str = "json") -> str:
    """Serialize as nested JSON or as a Newick string with branch lengths
    equal to height differences."""
    root = _build_tree(d)
    if format == "json":
        return json.dumps(root, indent=2)
    if format == "newick":
        left = _newick(root["left"], root["height"])
        right = _newick(root["right"], root["height"])
        return f"({left},{right});"
    raise DomainError(f"unknown format {format!r}")


def cut_heights(d: Dendrogram) -> list[float]:
    return [h for _, _, h in d.merges]


def zero_height_groups(d: Dendrogram) -> list[set]:
    """Leaf groups merged at exactly height 0 (identical vectors)."""
    n = len(d.leaves)
    members: dict[int, set] = {i: {d.leaves[i]} for i in range(n)}
    groups: dict[int, set] = {}
    for k, (a, b, h) in enumerate(d.merges):
        cid = n + k
        members[cid] = members[a] | members[b]
        if h == 0.0:
            groups.pop(a, None)
            groups.pop(b, None)
            groups[cid] = members[cid]
    return [g for g in groups.values() if len(g) > 1]
