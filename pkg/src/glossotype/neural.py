"""Feed-forward language classifier over POS tri-gram probabilities.

Two dense layers (relu hidden layer of 8 units, softmax output), trained
with mini-batch Adam on categorical cross-entropy. Everything is explicit
numpy so the gradients can be checked against finite differences. The
input width is whatever tri-gram union the corpora produce, not a fixed
number; X-bearing triples are excluded from features throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import SentenceCorpus, sample_sentences
from .errors import (
    DimensionMismatchError,
    EmptyConfusionError,
    EmptyCorpusError,
    EmptyDatasetError,
    ModelFormatError,
    NoTriplesError,
    NoUsableTriplesError,
    TooFewRowsPerClassError,
)
from .posgram import count_triples, dense_ids, triple_key
from .rng import Stream, derive_seed

LOSS_CLIP = 1e-12


@dataclass(frozen=True)
class DocumentDataset:
    feature_index: tuple[str, ...]  # X-free tri-gram keys, sorted ascending
    rows: np.ndarray  # [N, F] per-document tri-gram probabilities
    labels: np.ndarray  # [N] language index into label_names
    label_names: tuple[str, ...]

    def __len__(self) -> int:
        return self.rows.shape[0]


def build_dataset(
    corpora: list[SentenceCorpus],
    docs_per_lang: int = 1000,
    sentences_per_doc: int = 100,
    seed: int = 0,
) -> DocumentDataset:
    """Sample documents per language and turn them into feature rows.

    A document is the concatenation of sentences_per_doc sentences drawn
    via sample_sentences with a seed derived from (seed, language, doc
    number); its features are X-free tri-gram relative frequencies. The
    feature index is the sorted union of keys seen anywhere in the
    dataset. Documents without a single usable triple are dropped.
    """
    per_doc_counts: list[dict[int, int]] = []
    labels: list[int] = []
    label_names: list[str] = []
    observed: set[int] = set()

    for lang_idx, corpus in enumerate(corpora):
        if corpus.kind != "tagged":
            raise ValueError(f"corpus {corpus.language_code!r} is not tagged")
        if not corpus.sentences:
            raise EmptyCorpusError(f"corpus {corpus.language_code!r} has no sentences")
        if not any(len(s.tags) >= 3 for s in corpus.sentences):
            raise NoTriplesError(
                f"corpus {corpus.language_code!r} has no sentence with >= 3 tags"
            )
        label_names.append(corpus.language_code)
        for doc_idx in range(docs_per_lang):
            doc_seed = derive_seed(seed, corpus.language_code, doc_idx)
            sentences = sample_sentences(corpus, sentences_per_doc, doc_seed)
            dense = count_triples(sentences, exclude_x=True)
            nonzero = np.nonzero(dense)[0]
            if nonzero.size == 0:
                continue
            counts = {int(i): int(dense[i]) for i in nonzero}
            observed.update(counts)
            per_doc_counts.append(counts)
            labels.append(lang_idx)

    if not per_doc_counts:
        raise NoTriplesError("no document produced any X-free tri-gram")

    dense_ids = sorted(observed)
    column = {dense_id: col for col, dense_id in enumerate(dense_ids)}
    feature_index = tuple(triple_key(i) for i in dense_ids)
    rows = np.zeros((len(per_doc_counts), len(dense_ids)), dtype=np.float64)
    for r, counts in enumerate(per_doc_counts):
        total = sum(counts.values())
        for dense_id, count in counts.items():
            rows[r, column[dense_id]] = count / total
    return DocumentDataset(
        feature_index=feature_index,
        rows=rows,
        labels=np.array(labels, dtype=np.int64),
        label_names=tuple(label_names),
    )


@dataclass(frozen=True)
class MlpModel:
    W1: np.ndarray  # [F, hidden]
    b1: np.ndarray  # [hidden]
    W2: np.ndarray  # [hidden, C]
    b2: np.ndarray  # [C]

    @property
    def n_features(self) -> int:
        return self.W1.shape[0]

    @property
    def n_classes(self) -> int:
        return self.W2.shape[1]


@dataclass(frozen=True)
class Gradients:
    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: np.ndarray


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def forward(model: MlpModel, x: np.ndarray) -> np.ndarray:
    """Class probabilities for one feature vector or a batch of them."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != model.n_features:
        raise DimensionMismatchError(
            f"input width {x.shape[-1]} != model width {model.n_features}"
        )
    hidden = np.maximum(x @ model.W1 + model.b1, 0.0)
    return _softmax(hidden @ model.W2 + model.b2)


def loss(p: np.ndarray, y: int) -> float:
    """Categorical cross-entropy of one prediction."""
    return float(-np.log(p[y] + LOSS_CLIP))


def backward(model: MlpModel, rows: np.ndarray, labels: np.ndarray) -> Gradients:
    """Mean-over-batch gradients of the cross-entropy loss.

    Uses the fused softmax-cross-entropy gradient (p - onehot) at the
    output layer.
    """
    rows = np.asarray(rows, dtype=np.float64)
    labels = np.asarray(labels)
    if rows.ndim != 2 or rows.shape[0] == 0:
        raise DimensionMismatchError("batch must be a non-empty 2-D array")
    if rows.shape[-1] != model.n_features:
        raise DimensionMismatchError(
            f"input width {rows.shape[-1]} != model width {model.n_features}"
        )
    n = rows.shape[0]
    z1 = rows @ model.W1 + model.b1
    h1 = np.maximum(z1, 0.0)
    p = _softmax(h1 @ model.W2 + model.b2)

    d_z2 = p.copy()
    d_z2[np.arange(n), labels] -= 1.0
    d_z2 /= n
    d_w2 = h1.T @ d_z2
    d_b2 = d_z2.sum(axis=0)
    d_h1 = d_z2 @ model.W2.T
    d_z1 = d_h1 * (z1 > 0.0)
    d_w1 = rows.T @ d_z1
    d_b1 = d_z1.sum(axis=0)
    return Gradients(W1=d_w1, b1=d_b1, W2=d_w2, b2=d_b2)


@dataclass(frozen=True)
class AdamState:
    t: int
    m: Gradients
    v: Gradients
    alpha: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def initial(cls, model: MlpModel, alpha: float = 0.001, beta1: float = 0.9,
                beta2: float = 0.999, eps: float = 1e-8) -> "AdamState":
        def zeros() -> Gradients:
            return Gradients(
                W1=np.zeros_like(model.W1),
                b1=np.zeros_like(model.b1),
                W2=np.zeros_like(model.W2),
                b2=np.zeros_like(model.b2),
            )

        return cls(t=0, m=zeros(), v=zeros(), alpha=alpha, beta1=beta1, beta2=beta2, eps=eps)


_PARAMS = ("W1", "b1", "W2", "b2")


def adam_step(model: MlpModel, grads: Gradients, state: AdamState) -> tuple[MlpModel, AdamState]:
    """One Adam update: bias-corrected moments, param -= alpha*m_hat/(sqrt(v_hat)+eps)."""
    t = state.t + 1
    new_params = {}
    new_m = {}
    new_v = {}
    for name in _PARAMS:
        g = getattr(grads, name)
        m = state.beta1 * getattr(state.m, name) + (1.0 - state.beta1) * g
        v = state.beta2 * getattr(state.v, name) + (1.0 - state.beta2) * g * g
        m_hat = m / (1.0 - state.beta1**t)
        v_hat = v / (1.0 - state.beta2**t)
        new_params[name] = getattr(model, name) - state.alpha * m_hat / (np.sqrt(v_hat) + state.eps)
        new_m[name] = m
        new_v[name] = v
    return (
        MlpModel(**new_params),
        AdamState(
            t=t,
            m=Gradients(**new_m),
            v=Gradients(**new_v),
            alpha=state.alpha,
            beta1=state.beta1,
            beta2=state.beta2,
            eps=state.eps,
        ),
    )


def init_model(n_features: int, n_classes: int, hidden: int, seed: int) -> MlpModel:
    """He-normal first layer (relu), Glorot-uniform second layer (softmax)."""
    stream = Stream(derive_seed(seed, "init"))
    he_std = np.sqrt(2.0 / n_features)
    w1 = np.array(
        [stream.gauss() for _ in range(n_features * hidden)], dtype=np.float64
    ).reshape(n_features, hidden) * he_std
    limit = np.sqrt(6.0 / (hidden + n_classes))
    w2 = np.array(
        [stream.random() * 2.0 - 1.0 for _ in range(hidden * n_classes)], dtype=np.float64
    ).reshape(hidden, n_classes) * limit
    return MlpModel(
        W1=w1,
        b1=np.zeros(hidden, dtype=np.float64),
        W2=w2,
        b2=np.zeros(n_classes, dtype=np.float64),
    )


def train(
    dataset: DocumentDataset,
    epochs: int = 50,
    batch_size: int = 32,
    seed: int = 0,
    learning_rate: float = 0.001,
    hidden: int = 8,
) -> tuple[MlpModel, list[float]]:
    """Mini-batch Adam training; returns the model and per-epoch mean loss."""
    n = len(dataset)
    if n == 0:
        raise EmptyDatasetError("dataset has no rows")
    model = init_model(len(dataset.feature_index), len(dataset.label_names), hidden, seed)
    state = AdamState.initial(model, alpha=learning_rate)
    history: list[float] = []
    for epoch in range(epochs):
        order = list(range(n))
        Stream(derive_seed(seed, "shuffle", epoch)).shuffle(order)
        epoch_loss = 0.0
        for start in range(0, n, batch_size):
            batch = order[start : start + batch_size]
            rows = dataset.rows[batch]
            labels = dataset.labels[batch]
            p = forward(model, rows)
            epoch_loss += float(
                -np.log(p[np.arange(len(batch)), labels] + LOSS_CLIP).sum()
            )
            grads = backward(model, rows, labels)
            model, state = adam_step(model, grads, state)
        history.append(epoch_loss / n)
    return model, history


def predict(model: MlpModel, rows: np.ndarray) -> np.ndarray:
    return np.argmax(forward(model, rows), axis=-1)


@dataclass(frozen=True)
class ClassMetrics:
    precision: np.ndarray  # [C]
    recall: np.ndarray  # [C]
    fscore: np.ndarray  # [C]
    accuracy: float
    confusion: np.ndarray  # [C, C] counts, rows = true class


def metrics(confusion: np.ndarray) -> ClassMetrics:
    """Per-class precision/recall/F from a confusion matrix of counts.

    Zero denominators yield 0 by convention (a class never predicted has
    precision 0; F is 0 when precision and recall are both 0).
    """
    confusion = np.asarray(confusion)
    if confusion.ndim != 2 or confusion.shape[0] != confusion.shape[1]:
        raise ValueError("confusion matrix must be square")
    if (confusion < 0).any():
        raise ValueError("confusion counts must be non-negative")
    total = confusion.sum()
    if total == 0:
        raise EmptyConfusionError("confusion matrix has no counts")
    tp = np.diag(confusion).astype(np.float64)
    predicted = confusion.sum(axis=0).astype(np.float64)
    support = confusion.sum(axis=1).astype(np.float64)
    precision = np.divide(tp, predicted, out=np.zeros_like(tp), where=predicted > 0)
    recall = np.divide(tp, support, out=np.zeros_like(tp), where=support > 0)
    denom = precision + recall
    fscore = np.divide(
        2.0 * precision * recall, denom, out=np.zeros_like(denom), where=denom > 0
    )
    return ClassMetrics(
        precision=precision,
        recall=recall,
        fscore=fscore,
        accuracy=float(tp.sum() / total),
        confusion=confusion,
    )


def stratified_folds(dataset: DocumentDataset, k: int, seed: int) -> list[np.ndarray]:
    """Seeded stratified k-fold assignment, invariant under row permutation.

    Rows of each class are put into a canonical content order (lexicographic
    by feature vector) before the seeded shuffle, so shuffling the dataset
    does not move rows between folds. Fold sizes differ by at most one per
    class.
    """
    folds: list[list[int]] = [[] for _ in range(k)]
    for class_idx, class_name in enumerate(dataset.label_names):
        members = np.nonzero(dataset.labels == class_idx)[0]
        if len(members) < k:
            raise TooFewRowsPerClassError(
                f"class {class_name!r} has {len(members)} rows; k={k} needs at least {k}"
            )
        content = dataset.rows[members]
        canonical = members[np.lexsort(content.T[::-1])]
        order = list(canonical)
        Stream(derive_seed(seed, "fold", class_name)).shuffle(order)
        for position, row in enumerate(order):
            folds[position % k].append(int(row))
    return [np.array(sorted(fold), dtype=np.int64) for fold in folds]


def kfold_cv(
    dataset: DocumentDataset,
    k: int = 10,
    epochs: int = 50,
    batch_size: int = 32,
    seed: int = 0,
    learning_rate: float = 0.001,
    hidden: int = 8,
) -> tuple[list[ClassMetrics], dict]:
    """Stratified k-fold cross-validation.

    Returns per-fold metrics plus a summary with the mean and sample
    standard deviation of fold accuracies and the pooled (all held-out
    predictions) metrics, since "cross-validated accuracy" can mean
    either.
    """
    folds = stratified_folds(dataset, k, seed)
    per_fold: list[ClassMetrics] = []
    c = len(dataset.label_names)
    pooled = np.zeros((c, c), dtype=np.int64)
    for fold_idx, test_rows in enumerate(folds):
        train_rows = np.concatenate(
            [fold for i, fold in enumerate(folds) if i != fold_idx]
        )
        train_rows.sort()
        sub = DocumentDataset(
            feature_index=dataset.feature_index,
            rows=dataset.rows[train_rows],
            labels=dataset.labels[train_rows],
            label_names=dataset.label_names,
        )
        model, _ = train(
            sub,
            epochs=epochs,
            batch_size=batch_size,
            seed=derive_seed(seed, "train", fold_idx),
            learning_rate=learning_rate,
            hidden=hidden,
        )
        predictions = predict(model, dataset.rows[test_rows])
        confusion = np.zeros((c, c), dtype=np.int64)
        for true, pred in zip(dataset.labels[test_rows], predictions):
            confusion[true, pred] += 1
        pooled += confusion
        per_fold.append(metrics(confusion))
    accuracies = np.array([m.accuracy for m in per_fold])
    summary = {
        "fold_accuracies": [float(a) for a in accuracies],
        "mean_accuracy": float(accuracies.mean()),
        "std_accuracy": float(accuracies.std(ddof=1)) if k > 1 else 0.0,
        "pooled_accuracy": float(np.trace(pooled) / pooled.sum()),
        "pooled": metrics(pooled),
    }
    return per_fold, summary


@dataclass(frozen=True)
class TrainedModel:
    model: MlpModel
    feature_index: tuple[str, ...]
    label_names: tuple[str, ...]
    hyperparameters: dict
    seed: int


def save_model(trained: TrainedModel, path) -> None:
    """JSON persistence; float repr round-trips exactly."""
    payload = {
        "feature_index": list(trained.feature_index),
        "label_names": list(trained.label_names),
        "W1": trained.model.W1.tolist(),
        "b1": trained.model.b1.tolist(),
        "W2": trained.model.W2.tolist(),
        "b2": trained.model.b2.tolist(),
        "hyperparameters": trained.hyperparameters,
        "seed": trained.seed,
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8")


def load_model(path) -> TrainedModel:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        model = MlpModel(
            W1=np.asarray(payload["W1"], dtype=np.float64),
            b1=np.asarray(payload["b1"], dtype=np.float64),
            W2=np.asarray(payload["W2"], dtype=np.float64),
            b2=np.asarray(payload["b2"], dtype=np.float64),
        )
        feature_index = tuple(payload["feature_index"])
        label_names = tuple(payload["label_names"])
    except (KeyError, ValueError, TypeError, json.JSONDecodeError) as err:
        raise ModelFormatError(f"{path}: {err}") from None
    if model.W1.ndim != 2 or model.W2.ndim != 2 or model.W1.shape[0] != len(feature_index):
        raise ModelFormatError(f"{path}: inconsistent model shapes")
    if model.W2.shape[1] != len(label_names):
        raise ModelFormatError(f"{path}: inconsistent class count")
    return TrainedModel(
        model=model,
        feature_index=feature_index,
        label_names=label_names,
        hyperparameters=payload.get("hyperparameters", {}),
        seed=payload.get("seed", 0),
    )


def features_for_sentences(feature_index: tuple[str, ...], sentences) -> np.ndarray:
    """Feature vector for identify(): X-free tri-gram frequencies over the
    model's index. Tri-grams outside the index are ignored; the vector is
    normalized over the counted ones."""
    dense = count_triples(sentences, exclude_x=True)
    counts = dense[dense_ids(feature_index)].astype(np.float64)
    total = counts.sum()
    if total == 0:
        raise NoUsableTriplesError("input has no usable X-free tri-gram")
    return counts / total


def identify(trained: TrainedModel, sentences) -> list[tuple[str, float]]:
    """Ranked (language, probability) pairs for tagged input sentences."""
    vector = features_for_sentences(trained.feature_index, sentences)
    p = forward(trained.model, vector)
    ranked = sorted(zip(trained.label_names, p), key=lambda pair: (-pair[1], pair[0]))
    return [(lang, float(prob)) for lang, prob in ranked]
