"""Trees and graphs from distance matrices.

Agglomerative clustering uses average linkage (UPGMA) by default; single
and complete linkage exist for sensitivity checks. Similarity graphs keep
only pairs whose distance is significantly below the mean (z-score at or
below -threshold) and are partitioned with seeded asynchronous label
propagation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .distance import DistanceMatrix
from .errors import TooFewLabelsError, ZeroVarianceError
from .rng import Stream

DEFAULT_Z_THRESHOLD = 1.15035  # 75% two-sided confidence


@dataclass(frozen=True)
class TreeNode:
    height: float
    label: str | None = None
    children: tuple["TreeNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class Dendrogram:
    root: TreeNode
    # (representative of first cluster, of second cluster, merge height)
    # in merge order; representatives are the smallest leaf labels
    merges: tuple[tuple[str, str, float], ...]

    def leaf_labels(self) -> list[str]:
        out: list[str] = []

        def walk(node: TreeNode) -> None:
            if node.is_leaf:
                out.append(node.label)
            else:
                for child in node.children:
                    walk(child)

        walk(self.root)
        return out


def build_tree(matrix: DistanceMatrix, linkage: str = "average") -> Dendrogram:
    """Agglomerative clustering with deterministic tie-breaking.

    Each step merges the cluster pair with minimal linkage distance; on
    ties the pair whose (smallest-leaf-label, smallest-leaf-label) tuple
    sorts first wins. The merged node's height is that distance / 2.
    Average linkage updates distances with the size-weighted
    Lance-Williams rule, so heights are non-decreasing along the merge
    sequence.
    """
    if linkage not in ("average", "single", "complete"):
        raise ValueError(f"unknown linkage {linkage!r}")
    n = len(matrix.labels)
    if n < 2:
        raise TooFewLabelsError("need at least 2 labels to build a tree")

    nodes: dict[int, TreeNode] = {
        i: TreeNode(height=0.0, label=label) for i, label in enumerate(matrix.labels)
    }
    sizes: dict[int, int] = {i: 1 for i in range(n)}
    reps: dict[int, str] = {i: label for i, label in enumerate(matrix.labels)}
    dist: dict[tuple[int, int], float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            dist[(i, j)] = float(matrix.values[i, j])

    merges: list[tuple[str, str, float]] = []
    next_id = n
    active = set(range(n))
    while len(active) > 1:
        best_pair = None
        best_key = None
        for (i, j), d in dist.items():
            key = (d, tuple(sorted((reps[i], reps[j]))))
            if best_key is None or key < best_key:
                best_key = key
                best_pair = (i, j)
        i, j = best_pair
        d = dist[(i, j)]
        height = d / 2.0
        # put the child with the smaller representative first
        first, second = (i, j) if reps[i] < reps[j] else (j, i)
        merges.append((reps[first], reps[second], height))
        merged = TreeNode(height=height, children=(nodes[first], nodes[second]))

        new_id = next_id
        next_id += 1
        for k in active:
            if k in (i, j):
                continue
            d_ik = dist[tuple(sorted((i, k)))]
            d_jk = dist[tuple(sorted((j, k)))]
            if linkage == "average":
                d_new = (sizes[i] * d_ik + sizes[j] * d_jk) / (sizes[i] + sizes[j])
            elif linkage == "single":
                d_new = min(d_ik, d_jk)
            else:
                d_new = max(d_ik, d_jk)
            dist[(k, new_id)] = d_new
        for pair in [p for p in dist if i in p or j in p]:
            del dist[pair]
        active.discard(i)
        active.discard(j)
        active.add(new_id)
        nodes[new_id] = merged
        sizes[new_id] = sizes[i] + sizes[j]
        reps[new_id] = min(reps[i], reps[j])

    root = nodes[active.pop()]
    return Dendrogram(root=root, merges=tuple(merges))


def upgma(matrix: DistanceMatrix) -> Dendrogram:
    """Average-linkage agglomerative clustering."""
    return build_tree(matrix, linkage="average")


def to_newick(tree: Dendrogram) -> str:
    """Newick with branch lengths (parent height minus child height)."""

    def render(node: TreeNode, parent_height: float) -> str:
        branch = parent_height - node.height
        if node.is_leaf:
            return f"{node.label}:{branch!r}"
        inner = ",".join(render(child, node.height) for child in node.children)
        return f"({inner}):{branch!r}"

    root = tree.root
    if root.is_leaf:
        return f"{root.label};"
    inner = ",".join(render(child, root.height) for child in root.children)
    return f"({inner});"


@dataclass(frozen=True)
class SimilarityGraph:
    nodes: tuple[str, ...]
    # (node a, node b, z-score of the pair's distance), a before b in node order
    edges: tuple[tuple[str, str, float], ...]
    communities: dict[str, int] | None = None


def zscore_filter(
    matrix: DistanceMatrix, z_threshold: float = DEFAULT_Z_THRESHOLD
) -> SimilarityGraph:
    """Keep pairs whose distance is significantly smaller than average.

    Mean and sample standard deviation are computed over the strict upper
    triangle; the edge (i, j) is retained iff its z-score is <= -z_threshold.
    """
    n = len(matrix.labels)
    if n < 3:
        raise TooFewLabelsError("z-scores need at least 3 labels")
    iu = np.triu_indices(n, k=1)
    population = matrix.values[iu]
    mean = float(population.mean())
    std = float(population.std(ddof=1))
    if std == 0.0:
        raise ZeroVarianceError("all pairwise distances are equal")
    edges = []
    for i, j in zip(*iu):
        z = (float(matrix.values[i, j]) - mean) / std
        if z <= -z_threshold:
            edges.append((matrix.labels[i], matrix.labels[j], z))
    return SimilarityGraph(nodes=matrix.labels, edges=tuple(edges))


def detect_communities(graph: SimilarityGraph, seed: int, max_iters: int = 100) -> SimilarityGraph:
    """Asynchronous label propagation, deterministic given the seed.

    Every node starts with a unique label; nodes are visited in
    seeded-random order and adopt the most frequent label among their
    neighbors until a full sweep changes nothing or max_iters sweeps have
    run. A node whose current label ties for most frequent keeps it;
    other ties are broken by a seeded-uniform choice (a smallest-id rule
    would let low labels flood across bridges while all labels are still
    unique, merging well-separated blocks). Isolated nodes keep their own
    label. Community ids are renumbered by first appearance in node
    order.
    """
    if not graph.nodes:
        raise ValueError("graph has no nodes")
    position = {node: i for i, node in enumerate(graph.nodes)}
    neighbors: list[list[int]] = [[] for _ in graph.nodes]
    for a, b, _ in graph.edges:
        neighbors[position[a]].append(position[b])
        neighbors[position[b]].append(position[a])

    labels = list(range(len(graph.nodes)))
    stream = Stream(seed)
    order = list(range(len(graph.nodes)))
    for _ in range(max_iters):
        stream.shuffle(order)
        changed = False
        for i in order:
            if not neighbors[i]:
                continue
            tally: dict[int, int] = {}
            for k in neighbors[i]:
                tally[labels[k]] = tally.get(labels[k], 0) + 1
            top = max(tally.values())
            candidates = sorted(label for label, count in tally.items() if count == top)
            if labels[i] in candidates:
                continue
            best = candidates[stream.randrange(len(candidates))] if len(candidates) > 1 else candidates[0]
            if best != labels[i]:
                labels[i] = best
                changed = True
        if not changed:
            break

    renumber: dict[int, int] = {}
    communities = {}
    for node, label in zip(graph.nodes, labels):
        if label not in renumber:
            renumber[label] = len(renumber)
        communities[node] = renumber[label]
    return replace(graph, communities=communities)


def to_dot(graph: SimilarityGraph) -> str:
    """DOT text: community id as node color, z-score as edge weight.

    Edges between different communities (the "bridges") are drawn dashed
    and red.
    """
    communities = graph.communities or {}
    lines = ["graph language_similarity {", "  node [style=filled];"]
    for node in graph.nodes:
        community = communities.get(node, 0)
        lines.append(f'  "{node}" [color="/set312/{community % 12 + 1}", community={community}];')
    for a, b, z in graph.edges:
        attrs = f"weight={z!r}"
        if communities and communities.get(a) != communities.get(b):
            attrs += ', color=red, style=dashed, bridge="true"'
        lines.append(f'  "{a}" -- "{b}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: SimilarityGraph) -> dict:
    return {
        "nodes": list(graph.nodes),
        "edges": [[a, b, z] for a, b, z in graph.edges],
        "communities": graph.communities,
    }


def save_newick(tree: Dendrogram, path) -> None:
    Path(path).write_text(to_newick(tree) + "\n", encoding="utf-8")
