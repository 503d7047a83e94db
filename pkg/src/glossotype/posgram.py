"""Part-of-speech tri-gram structure profiles.

Profiles for structure analysis keep triples containing the X tag; the
neural-network features exclude them (exclude_x=True), matching the two
settings used downstream.
"""

from __future__ import annotations

import numpy as np

from .corpus import NUM_TAGS, X_INDEX, PosSentence, SentenceCorpus, UposTag
from .errors import EmptyCorpusError, NoTriplesError
from .kernels import count_tag_triples
from .profiles import POS_KIND, FeatureProfile, top_k_frequencies

_TAGS = tuple(UposTag)

# flat dense-table index -> "TAG1|TAG2|TAG3"
_TRIPLE_KEYS = tuple(
    f"{a}|{b}|{c}" for a in _TAGS for b in _TAGS for c in _TAGS
)


_KEY_TO_DENSE = {key: i for i, key in enumerate(_TRIPLE_KEYS)}


def triple_key(index: int) -> str:
    return _TRIPLE_KEYS[index]


def dense_ids(keys) -> np.ndarray:
    """Dense-table indices for "TAG1|TAG2|TAG3" keys."""
    return np.array([_KEY_TO_DENSE[key] for key in keys], dtype=np.int64)


def x_free_mask() -> np.ndarray:
    """Boolean mask over the dense triple table: True where no tag is X."""
    mask = np.ones(NUM_TAGS**3, dtype=bool)
    grid = np.arange(NUM_TAGS**3)
    first = grid // (NUM_TAGS * NUM_TAGS)
    second = (grid // NUM_TAGS) % NUM_TAGS
    third = grid % NUM_TAGS
    mask[(first == X_INDEX) | (second == X_INDEX) | (third == X_INDEX)] = False
    return mask


_X_FREE = x_free_mask()


def pos_trigrams(sentence: PosSentence) -> list[tuple[UposTag, UposTag, UposTag]]:
    """All contiguous windows of 3 tags; never crosses sentence boundaries."""
    tags = sentence.tags
    return [tuple(tags[i : i + 3]) for i in range(len(tags) - 2)]


def count_triples(sentences, exclude_x: bool) -> np.ndarray:
    """Dense tag-triple counts (length 17**3) for a sentence iterable."""
    counts = np.zeros(NUM_TAGS**3, dtype=np.int64)
    count_tag_triples([s.encode() for s in sentences], NUM_TAGS, counts)
    if exclude_x:
        counts[~_X_FREE] = 0
    return counts


def build_pos_profile(
    corpus: SentenceCorpus, top_k: int = 2000, exclude_x: bool = False
) -> FeatureProfile:
    """Top tag-triples of a tagged corpus as relative frequencies.

    With exclude_x, triples containing X are dropped before normalization,
    so frequencies are fractions of the X-free total.
    """
    if corpus.kind != "tagged":
        raise ValueError("POS profiles need a tagged corpus")
    if not corpus.sentences:
        raise EmptyCorpusError(f"corpus {corpus.language_code!r} has no sentences")
    dense = count_triples(corpus.sentences, exclude_x)
    total = int(dense.sum())
    if total == 0:
        raise NoTriplesError(
            f"corpus {corpus.language_code!r} has no usable tag triples"
        )
    nonzero = np.nonzero(dense)[0]
    counts = {_TRIPLE_KEYS[i]: int(dense[i]) for i in nonzero}
    return FeatureProfile(
        language_code=corpus.language_code,
        kind=POS_KIND,
        freqs=top_k_frequencies(counts, total, top_k),
        total_units=total,
    )
