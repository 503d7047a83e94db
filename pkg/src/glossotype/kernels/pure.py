"""Pure-Python counting kernels.

Reference implementations of the hot loops; glossotype.kernels selects
these when the compiled twin (_speedups) is unavailable. Both backends
must produce identical results for identical inputs.
"""

from collections import Counter

BACKEND = "python"


def count_char_ngrams(texts, n: int) -> dict:
    """Count every n-character window that does not contain a space.

    Runs are maximal space-free substrings; a run shorter than n
    contributes nothing. Returns ngram -> count.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    counts: Counter = Counter()
    for text in texts:
        for run in text.split(" "):
            end = len(run) - n + 1
            if end > 0:
                counts.update(run[i : i + n] for i in range(end))
    return counts


def count_tag_triples(seqs, n_tags: int, counts) -> None:
    """Accumulate tag-triple counts into a dense table.

    seqs are bytes of tag indices in [0, n_tags); counts is a writable
    flat buffer of length n_tags**3 indexed by (a*n_tags + b)*n_tags + c.
    """
    n2 = n_tags * n_tags
    limit = n_tags
    for seq in seqs:
        for i in range(len(seq) - 2):
            a, b, c = seq[i], seq[i + 1], seq[i + 2]
            if a >= limit or b >= limit or c >= limit:
                raise ValueError(f"tag index out of range: {max(a, b, c)} >= {n_tags}")
            counts[a * n2 + b * n_tags + c] += 1
