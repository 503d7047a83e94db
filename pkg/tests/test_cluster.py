import math

import numpy as np
import pytest
from sklearn.metrics import adjusted_rand_score

from glossotype.cluster import (
    DEFAULT_Z_THRESHOLD,
    Dendrogram,
    SimilarityGraph,
    TreeNode,
    build_tree,
    detect_communities,
    graph_to_json,
    to_dot,
    to_newick,
    upgma,
    zscore_filter,
)
from glossotype.distance import DistanceMatrix
from glossotype.errors import TooFewLabelsError, ZeroVarianceError
from glossotype.rng import Stream

from synthdata import planted_partition


def matrix_from(labels, values, kind="overall"):
    return DistanceMatrix(labels=tuple(labels), values=np.asarray(values, dtype=float), kind=kind)


def random_metric_matrix(stream, n, dim=4):
    # Manhattan distances between random points: guaranteed metric
    points = [[stream.random() for _ in range(dim)] for _ in range(n)]
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = sum(abs(a - b) for a, b in zip(points[i], points[j]))
            values[i, j] = values[j, i] = d
    return matrix_from([f"l{i}" for i in range(n)], values)


def upgma_oracle(labels, values):
    """Brute force: recompute every cluster-pair average from the original
    matrix at every step."""
    clusters = [frozenset([i]) for i in range(len(labels))]
    merges = []
    while len(clusters) > 1:
        best = None
        for x in range(len(clusters)):
            for y in range(x + 1, len(clusters)):
                a_set, b_set = clusters[x], clusters[y]
                avg = sum(values[a][b] for a in a_set for b in b_set) / (
                    len(a_set) * len(b_set)
                )
                rep = tuple(
                    sorted(
                        (
                            min(labels[a] for a in a_set),
                            min(labels[b] for b in b_set),
                        )
                    )
                )
                key = (avg, rep)
                if best is None or key < best[0]:
                    best = (key, x, y)
        (avg, rep), x, y = best
        merges.append((rep[0], rep[1], avg / 2.0))
        merged = clusters[x] | clusters[y]
        clusters = [c for k, c in enumerate(clusters) if k not in (x, y)]
        clusters.append(merged)
    return merges


def parse_newick(text):
    """Minimal Newick parser used as the round-trip oracle."""
    assert text.endswith(";")
    pos = 0

    def node():
        nonlocal pos
        if text[pos] == "(":
            pos += 1
            children = [node()]
            while text[pos] == ",":
                pos += 1
                children.append(node())
            assert text[pos] == ")"
            pos += 1
            name = None
            payload = children
        else:
            start = pos
            while text[pos] not in ":,();":
                pos += 1
            name = text[start:pos]
            payload = name
        length = None
        if text[pos] == ":":
            pos += 1
            start = pos
            while text[pos] not in ",();":
                pos += 1
            length = float(text[start:pos])
        return payload, length

    tree, length = node()
    assert text[pos] == ";"
    return tree, length


def serialize_parsed(node):
    payload, length = node
    if isinstance(payload, list):
        body = "(" + ",".join(serialize_parsed(child) for child in payload) + ")"
    else:
        body = payload
    return body if length is None else f"{body}:{length!r}"


class TestUpgma:
    def test_two_labels(self):
        matrix = matrix_from(["a", "b"], [[0.0, 1.0], [1.0, 0.0]])
        tree = upgma(matrix)
        assert tree.root.height == 0.5
        assert tree.merges == (("a", "b", 0.5),)

    def test_newick_of_two_leaves(self):
        matrix = matrix_from(["a", "b"], [[0.0, 1.0], [1.0, 0.0]])
        assert to_newick(upgma(matrix)) == "(a:0.5,b:0.5);"

    def test_two_separated_pairs_topology(self):
        # a-b and c-d are close; everything across is far
        values = [
            [0.0, 0.1, 9.0, 9.0],
            [0.1, 0.0, 9.0, 9.0],
            [9.0, 9.0, 0.0, 0.2],
            [9.0, 9.0, 0.2, 0.0],
        ]
        tree = upgma(matrix_from(["a", "b", "c", "d"], values))
        assert tree.merges[0][:2] == ("a", "b")
        assert tree.merges[1][:2] == ("c", "d")
        assert tree.merges[2][:2] == ("a", "c")
        left, right = tree.root.children
        assert sorted(label for label in _leaves(left)) in (["a", "b"], ["c", "d"])
        assert sorted(label for label in _leaves(right)) in (["a", "b"], ["c", "d"])

    def test_oracle_equivalence_on_random_matrices(self):
        stream = Stream(404)
        for _ in range(50):
            matrix = random_metric_matrix(stream, 8)
            tree = upgma(matrix)
            expected = upgma_oracle(list(matrix.labels), matrix.values.tolist())
            assert len(tree.merges) == len(expected) == 7
            for got, want in zip(tree.merges, expected):
                assert got[:2] == want[:2]
                assert got[2] == pytest.approx(want[2], abs=1e-12)

    def test_heights_non_decreasing(self):
        stream = Stream(405)
        for _ in range(20):
            tree = upgma(random_metric_matrix(stream, 10))
            heights = [h for _, _, h in tree.merges]
            assert all(a <= b + 1e-12 for a, b in zip(heights, heights[1:]))

    def test_leaf_set_preserved(self):
        stream = Stream(406)
        matrix = random_metric_matrix(stream, 12)
        tree = upgma(matrix)
        assert sorted(tree.leaf_labels()) == sorted(matrix.labels)

    def test_too_few_labels(self):
        with pytest.raises(TooFewLabelsError):
            upgma(matrix_from(["only"], [[0.0]]))

    def test_tie_breaks_on_smallest_label_pair(self):
        # all three pairs tie at distance 2: (a, b) must merge first
        values = [[0.0, 2.0, 2.0], [2.0, 0.0, 2.0], [2.0, 2.0, 0.0]]
        tree = upgma(matrix_from(["c", "a", "b"], values))
        assert tree.merges[0][:2] == ("a", "b")
        assert tree.merges[1][:2] == ("a", "c")

    def test_single_and_complete_linkage_differ_when_they_should(self):
        values = [
            [0.0, 2.0, 3.0, 10.0],
            [2.0, 0.0, 4.0, 10.0],
            [3.0, 4.0, 0.0, 5.0],
            [10.0, 10.0, 5.0, 0.0],
        ]
        matrix = matrix_from(["a", "b", "c", "d"], values)
        single = build_tree(matrix, "single")
        complete = build_tree(matrix, "complete")
        assert single.merges[-1][2] <= complete.merges[-1][2]


def _leaves(node):
    if node.is_leaf:
        return [node.label]
    out = []
    for child in node.children:
        out.extend(_leaves(child))
    return out


class TestNewick:
    def test_three_leaves_nested(self):
        values = [
            [0.0, 1.0, 4.0],
            [1.0, 0.0, 4.0],
            [4.0, 4.0, 0.0],
        ]
        newick = to_newick(upgma(matrix_from(["a", "b", "c"], values)))
        assert newick.count("(") == 2
        assert newick.endswith(";")
        for label in ("a", "b", "c"):
            assert label in newick

    def test_roundtrip_identity(self):
        stream = Stream(500)
        for n in (2, 3, 5, 9):
            tree = upgma(random_metric_matrix(stream, n))
            newick = to_newick(tree)
            parsed = parse_newick(newick)
            assert serialize_parsed(parsed) + ";" == newick

    def test_branch_lengths_sum_to_root_height(self):
        stream = Stream(501)
        tree = upgma(random_metric_matrix(stream, 6))

        def max_depth(node):
            if node.is_leaf:
                return 0.0
            return max(node.height - c.height + max_depth(c) for c in node.children)

        # ultrametric: every leaf is at distance root.height from the root
        def leaf_depths(node, acc):
            if node.is_leaf:
                return [acc]
            out = []
            for child in node.children:
                out.extend(leaf_depths(child, acc + node.height - child.height))
            return out

        for depth in leaf_depths(tree.root, 0.0):
            assert depth == pytest.approx(tree.root.height, abs=1e-12)


class TestZScoreFilter:
    def test_obvious_outlier_pair_retained(self):
        stream = Stream(600)
        n = 12
        values = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                values[i, j] = values[j, i] = 10.0 + stream.random() * 0.5
        values[0, 1] = values[1, 0] = 1.0  # way more similar than the rest
        graph = zscore_filter(matrix_from([f"l{i}" for i in range(n)], values))
        assert len(graph.edges) == 1
        assert graph.edges[0][:2] == ("l0", "l1")
        assert graph.edges[0][2] < -5.0

    def test_zero_variance(self):
        values = np.ones((4, 4)) - np.eye(4)
        with pytest.raises(ZeroVarianceError):
            zscore_filter(matrix_from(["a", "b", "c", "d"], values))

    def test_needs_three_labels(self):
        with pytest.raises(TooFewLabelsError):
            zscore_filter(matrix_from(["a", "b"], [[0.0, 1.0], [1.0, 0.0]]))

    def test_monte_carlo_calibration(self):
        # 142 labels -> 10011 iid pairs; retained fraction ~ Phi(-z)
        stream = Stream(601)
        n = 142
        values = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                d = 10.0 + stream.gauss()
                values[i, j] = values[j, i] = d
        graph = zscore_filter(matrix_from([f"l{i:03d}" for i in range(n)], values))
        pairs = n * (n - 1) // 2
        fraction = len(graph.edges) / pairs
        phi = 0.5 * math.erfc(DEFAULT_Z_THRESHOLD / math.sqrt(2.0))
        assert phi == pytest.approx(0.125, abs=0.001)
        assert fraction == pytest.approx(phi, abs=0.01)

    def test_scale_invariance(self):
        stream = Stream(602)
        matrix = random_metric_matrix(stream, 15)
        base = zscore_filter(matrix)
        for factor in (0.25, 3.0, 1000.0):
            scaled = matrix_from(matrix.labels, matrix.values * factor)
            assert {e[:2] for e in zscore_filter(scaled).edges} == {
                e[:2] for e in base.edges
            }

    def test_default_threshold_value(self):
        assert DEFAULT_Z_THRESHOLD == 1.15035


class TestCommunities:
    def graph_of(self, nodes, edges):
        return SimilarityGraph(nodes=tuple(nodes), edges=tuple(edges))

    def test_two_disconnected_cliques(self):
        nodes = ["a", "b", "c", "x", "y", "z"]
        edges = [("a", "b", -2.0), ("b", "c", -2.0), ("a", "c", -2.0),
                 ("x", "y", -2.0), ("y", "z", -2.0), ("x", "z", -2.0)]
        graph = detect_communities(self.graph_of(nodes, edges), seed=3)
        communities = graph.communities
        assert communities["a"] == communities["b"] == communities["c"]
        assert communities["x"] == communities["y"] == communities["z"]
        assert communities["a"] != communities["x"]

    def test_single_node(self):
        graph = detect_communities(self.graph_of(["solo"], []), seed=1)
        assert graph.communities == {"solo": 0}

    def test_isolated_nodes_keep_singletons(self):
        graph = detect_communities(
            self.graph_of(["a", "b", "iso"], [("a", "b", -2.0)]), seed=5
        )
        communities = graph.communities
        assert communities["a"] == communities["b"]
        assert communities["iso"] != communities["a"]

    def test_partition_property(self):
        nodes, edges, _ = planted_partition(3, 8, 0.8, 0.1, seed=9)
        graph = detect_communities(self.graph_of(nodes, edges), seed=9)
        assert set(graph.communities) == set(nodes)
        ids = set(graph.communities.values())
        assert ids == set(range(len(ids)))

    def test_deterministic_given_seed(self):
        nodes, edges, _ = planted_partition(4, 10, 0.9, 0.05, seed=77)
        a = detect_communities(self.graph_of(nodes, edges), seed=11)
        b = detect_communities(self.graph_of(nodes, edges), seed=11)
        assert a.communities == b.communities

    def test_planted_partition_recovery(self):
        scores = []
        for seed in range(20):
            nodes, edges, truth = planted_partition(4, 10, 0.9, 0.05, seed=1000 + seed)
            graph = detect_communities(self.graph_of(nodes, edges), seed=seed)
            labels_true = [truth[n] for n in nodes]
            labels_pred = [graph.communities[n] for n in nodes]
            scores.append(adjusted_rand_score(labels_true, labels_pred))
        assert float(np.mean(scores)) >= 0.9


class TestGraphOutput:
    def build(self):
        nodes = ["a", "b", "c", "d"]
        edges = [("a", "b", -1.5), ("c", "d", -1.8), ("b", "c", -1.2)]
        return detect_communities(SimilarityGraph(tuple(nodes), tuple(edges)), seed=2)

    def test_dot_structure(self):
        dot = to_dot(self.build())
        assert dot.startswith("graph language_similarity {")
        assert dot.rstrip().endswith("}")
        assert '"a" -- "b" [weight=-1.5' in dot
        assert "community=" in dot

    def test_dot_marks_bridges(self):
        graph = self.build()
        dot = to_dot(graph)
        communities = graph.communities
        for a, b, _ in graph.edges:
            line = next(l for l in dot.splitlines() if f'"{a}" -- "{b}"' in l)
            if communities[a] != communities[b]:
                assert "bridge" in line and "red" in line
            else:
                assert "bridge" not in line

    def test_json_payload(self):
        graph = self.build()
        payload = graph_to_json(graph)
        assert payload["nodes"] == ["a", "b", "c", "d"]
        assert len(payload["edges"]) == 3
        assert set(payload["communities"]) == {"a", "b", "c", "d"}
