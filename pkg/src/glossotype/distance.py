"""Manhattan distances between feature profiles.

Profiles are aligned over the sorted union of their keys with 0 for
features a language does not have, so per-language top-k truncation never
silently drops a comparison dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DuplicateLanguageError, LabelMismatchError, MixedKindsError
from .profiles import CHAR_KIND, FeatureProfile

WRITTEN = "written"
STRUCTURE = "structure"
OVERALL = "overall"


@dataclass(frozen=True)
class FeatureIndex:
    kind: str
    keys: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "_positions", {k: i for i, k in enumerate(self.keys)})

    def __len__(self) -> int:
        return len(self.keys)

    def vector(self, profile: FeatureProfile) -> np.ndarray:
        if profile.kind != self.kind:
            raise MixedKindsError(
                f"profile kind {profile.kind!r} does not match index kind {self.kind!r}"
            )
        dense = np.zeros(len(self.keys), dtype=np.float64)
        positions = self._positions
        for key, freq in profile.freqs.items():
            pos = positions.get(key)
            if pos is not None:
                dense[pos] = freq
        return dense


@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple[str, ...]
    values: np.ndarray  # symmetric, zero diagonal
    kind: str  # written | structure | overall

    def __post_init__(self):
        n = len(self.labels)
        if self.values.shape != (n, n):
            raise ValueError(f"matrix shape {self.values.shape} != ({n}, {n})")

    def subset(self, labels) -> "DistanceMatrix":
        """Restrict to the given labels, in the given order."""
        index = {label: i for i, label in enumerate(self.labels)}
        try:
            order = [index[label] for label in labels]
        except KeyError as err:
            raise LabelMismatchError(f"label {err.args[0]!r} not in matrix") from None
        values = self.values[np.ix_(order, order)].copy()
        return DistanceMatrix(labels=tuple(labels), values=values, kind=self.kind)


def align_features(profiles: list[FeatureProfile]) -> FeatureIndex:
    """Sorted union of all profile keys; errors if kinds are mixed."""
    if not profiles:
        raise ValueError("need at least one profile")
    kinds = {p.kind for p in profiles}
    if len(kinds) > 1:
        raise MixedKindsError(f"profiles mix kinds: {sorted(kinds)}")
    keys = set()
    for profile in profiles:
        keys.update(profile.freqs)
    return FeatureIndex(kind=profiles[0].kind, keys=tuple(sorted(keys)))


def manhattan(a: FeatureProfile, b: FeatureProfile, index: FeatureIndex) -> float:
    """Sum of absolute coordinate differences over the aligned index."""
    return float(np.abs(index.vector(a) - index.vector(b)).sum())


def _matrix_kind(profile_kind: str) -> str:
    return WRITTEN if profile_kind == CHAR_KIND else STRUCTURE


def _manhattan_vectors(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).sum())


def distance_matrix(profiles: list[FeatureProfile], metric=None) -> DistanceMatrix:
    """Pairwise distances over the aligned index; labels follow input order.

    metric is a hook taking two aligned dense vectors and returning a
    float; the default is the Manhattan distance.
    """
    if len(profiles) < 2:
        raise ValueError("need at least two profiles")
    if metric is None:
        metric = _manhattan_vectors
    labels = [p.language_code for p in profiles]
    if len(set(labels)) != len(labels):
        raise DuplicateLanguageError(f"duplicate language codes in {labels}")
    index = align_features(profiles)
    vectors = np.stack([index.vector(p) for p in profiles])
    n = len(profiles)
    values = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            d = metric(vectors[i], vectors[j])
            values[i, j] = d
            values[j, i] = d
    return DistanceMatrix(labels=tuple(labels), values=values, kind=_matrix_kind(profiles[0].kind))


def average_matrices(a: DistanceMatrix, b: DistanceMatrix) -> DistanceMatrix:
    """Element-wise mean of two matrices over the same label set.

    b is reordered to a's label order first; the result has kind
    "overall".
    """
    if set(a.labels) != set(b.labels):
        raise LabelMismatchError(
            f"label sets differ: {sorted(a.labels)} vs {sorted(b.labels)}"
        )
    b_aligned = b.subset(a.labels)
    values = (a.values + b_aligned.values) / 2.0
    return DistanceMatrix(labels=a.labels, values=values, kind=OVERALL)


def minmax_normalize(matrix: DistanceMatrix) -> DistanceMatrix:
    """Rescale off-diagonal values to [0, 1]; optional pre-averaging step."""
    n = len(matrix.labels)
    if n < 2:
        return matrix
    off = ~np.eye(n, dtype=bool)
    lo = matrix.values[off].min()
    hi = matrix.values[off].max()
    if hi == lo:
        scaled = np.zeros_like(matrix.values)
    else:
        scaled = (matrix.values - lo) / (hi - lo)
        scaled[~off] = 0.0
    return DistanceMatrix(labels=matrix.labels, values=scaled, kind=matrix.kind)


def save_matrix_tsv(matrix: DistanceMatrix, path) -> None:
    lines = ["\t".join(("",) + matrix.labels)]
    for label, row in zip(matrix.labels, matrix.values):
        lines.append(label + "\t" + "\t".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_matrix_tsv(path, kind: str) -> DistanceMatrix:
    text = Path(path).read_text(encoding="utf-8").rstrip("\n")
    lines = text.split("\n")
    labels = tuple(lines[0].split("\t")[1:])
    values = np.zeros((len(labels), len(labels)), dtype=np.float64)
    for i, line in enumerate(lines[1:]):
        cells = line.split("\t")
        values[i, :] = [float(v) for v in cells[1:]]
    return DistanceMatrix(labels=labels, values=values, kind=kind)


def save_matrix_phylip(matrix: DistanceMatrix, path) -> None:
    """PHYLIP square-matrix format for external tree tools."""
    lines = [str(len(matrix.labels))]
    for label, row in zip(matrix.labels, matrix.values):
        lines.append(f"{label:<10}" + " ".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
