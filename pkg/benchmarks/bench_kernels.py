#!/usr/bin/env python3
"""Compare the compiled counting kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--sentences N] [--repeat R]
"""

import argparse
import string
import time

import numpy as np

from glossotype.corpus import NUM_TAGS
from glossotype.kernels import pure
from glossotype.rng import Stream

try:
    from glossotype.kernels import _speedups
except ImportError:
    _speedups = None


def synth_texts(n_sentences: int, seed: int = 7) -> list[str]:
    stream = Stream(seed)
    letters = string.ascii_lowercase
    texts = []
    for _ in range(n_sentences):
        words = []
        for _ in range(4 + stream.randrange(10)):
            words.append(
                "".join(letters[stream.randrange(26)] for _ in range(2 + stream.randrange(8)))
            )
        texts.append(" ".join(words))
    return texts


def synth_tags(n_sentences: int, seed: int = 11) -> list[bytes]:
    stream = Stream(seed)
    return [
        bytes(stream.randrange(NUM_TAGS) for _ in range(3 + stream.randrange(15)))
        for _ in range(n_sentences)
    ]


def best_of(repeat: int, fn, *args) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--sentences", type=int, default=50_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    texts = synth_texts(args.sentences)
    tags = synth_tags(args.sentences)
    print(f"{args.sentences} sentences, best of {args.repeat} runs\n")
    print(f"{'kernel':<28}{'python':>10}{'c':>10}{'speedup':>9}")

    for n in (2, 3):
        t_py = best_of(args.repeat, pure.count_char_ngrams, texts, n)
        line = f"{f'count_char_ngrams n={n}':<28}{t_py:>9.3f}s"
        if _speedups is not None:
            assert dict(_speedups.count_char_ngrams(texts, n)) == dict(
                pure.count_char_ngrams(texts, n)
            )
            t_c = best_of(args.repeat, _speedups.count_char_ngrams, texts, n)
            line += f"{t_c:>9.3f}s{t_py / t_c:>8.1f}x"
        print(line)

    def run_py():
        counts = np.zeros(NUM_TAGS**3, dtype=np.int64)
        pure.count_tag_triples(tags, NUM_TAGS, counts)
        return counts

    t_py = best_of(args.repeat, run_py)
    line = f"{'count_tag_triples':<28}{t_py:>9.3f}s"
    if _speedups is not None:

        def run_c():
            counts = np.zeros(NUM_TAGS**3, dtype=np.int64)
            _speedups.count_tag_triples(tags, NUM_TAGS, counts)
            return counts

        assert (run_py() == run_c()).all()
        t_c = best_of(args.repeat, run_c)
        line += f"{t_c:>9.3f}s{t_py / t_c:>8.1f}x"
    print(line)
    if _speedups is None:
        print("\ncompiled kernels not available; showing pure-Python timings only")


if __name__ == "__main__":
    main()
