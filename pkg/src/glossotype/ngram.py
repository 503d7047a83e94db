"""Character di-gram and tri-gram spelling profiles.

Input sentences must already be transliterated (lowercase ASCII); n-grams
never span a space, so "WORD" yields tri-grams wor/ord and di-grams
wo/or/rd while "a b" yields no di-gram at all.
"""

from __future__ import annotations

from .corpus import SentenceCorpus
from .errors import EmptyCorpusError
from .kernels import count_char_ngrams
from .profiles import CHAR_KIND, FeatureProfile, top_k_frequencies


def char_ngrams(sentence: str, n: int) -> list[str]:
    """All n-character windows of each maximal space-free run, in order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    grams = []
    for run in sentence.split(" "):
        for i in range(len(run) - n + 1):
            grams.append(run[i : i + n])
    return grams


def build_char_profile(corpus: SentenceCorpus, top_k_per_n: int = 1000) -> FeatureProfile:
    """Top di-grams and tri-grams of a corpus as one combined profile.

    Each family is counted and normalized separately (di-gram frequencies
    sum to 1 over all di-grams, likewise tri-grams), then truncated to the
    top_k_per_n most frequent per family with ties broken by key. Keys of
    the two families never collide (different lengths).
    """
    if corpus.kind != "raw":
        raise ValueError("char profiles need a raw corpus")
    if not corpus.sentences:
        raise EmptyCorpusError(f"corpus {corpus.language_code!r} has no sentences")

    texts = [s.text for s in corpus.sentences]
    freqs: dict[str, float] = {}
    total_units = 0
    for n in (2, 3):
        counts = count_char_ngrams(texts, n)
        family_total = sum(counts.values())
        if family_total == 0:
            raise EmptyCorpusError(
                f"corpus {corpus.language_code!r} produced no {n}-grams"
            )
        total_units += family_total
        freqs.update(top_k_frequencies(counts, family_total, top_k_per_n))
    return FeatureProfile(
        language_code=corpus.language_code,
        kind=CHAR_KIND,
        freqs=freqs,
        total_units=total_units,
    )
