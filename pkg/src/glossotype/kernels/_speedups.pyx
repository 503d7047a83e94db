# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled counting kernels; contract mirrors glossotype.kernels.pure.

ASCII texts are counted through a dense 128**n table (transliterated text
is always ASCII); anything else falls back to a per-text dict path so the
two backends stay interchangeable on arbitrary input.
"""

from libc.stdlib cimport calloc, free

BACKEND = "c"


cdef void _count_text_slices(unicode text, int n, dict out):
    # non-ASCII fallback, same run semantics as the fast path
    cdef Py_ssize_t i, end
    for run in text.split(" "):
        end = len(run) - n + 1
        for i in range(end):
            key = run[i : i + n]
            prev = out.get(key)
            out[key] = 1 if prev is None else prev + 1


def count_char_ngrams(texts, int n):
    """Count every n-character window that does not contain a space."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 3:
        # dense table would not fit; spec needs n in {2, 3} only
        out = {}
        for text in texts:
            _count_text_slices(text, n, out)
        return out

    cdef Py_ssize_t size = 1
    cdef int d
    for d in range(n):
        size *= 128
    cdef long long* table = <long long*> calloc(size, sizeof(long long))
    if table == NULL:
        raise MemoryError()

    cdef dict out_dict = {}
    cdef bytes encoded
    cdef const unsigned char* s
    cdef Py_ssize_t length, i, idx, rem
    cdef int k
    cdef unsigned char c
    cdef bint has_space
    cdef unsigned char buf[3]

    try:
        for text in texts:
            try:
                encoded = (<unicode> text).encode("ascii")
            except UnicodeEncodeError:
                _count_text_slices(text, n, out_dict)
                continue
            s = encoded
            length = len(encoded)
            for i in range(length - n + 1):
                has_space = False
                idx = 0
                for k in range(n):
                    c = s[i + k]
                    if c == 0x20:
                        has_space = True
                        break
                    idx = idx * 128 + c
                if not has_space:
                    table[idx] += 1
        for idx in range(size):
            if table[idx] > 0:
                rem = idx
                for k in range(n - 1, -1, -1):
                    buf[k] = <unsigned char> (rem % 128)
                    rem //= 128
                key = buf[:n].decode("ascii")
                prev = out_dict.get(key)
                count = table[idx]
                out_dict[key] = count if prev is None else prev + count
    finally:
        free(table)
    return out_dict


def count_tag_triples(seqs, int n_tags, long long[::1] counts):
    """Accumulate tag-triple counts into a dense n_tags**3 table."""
    cdef Py_ssize_t expected = (<Py_ssize_t> n_tags) ** 3
    if counts.shape[0] != expected:
        raise ValueError(f"counts buffer must have length {expected}")
    cdef const unsigned char[::1] view
    cdef Py_ssize_t i, length
    cdef int a, b, c
    for seq in seqs:
        view = seq
        length = view.shape[0]
        for i in range(length - 2):
            a = view[i]
            b = view[i + 1]
            c = view[i + 2]
            if a >= n_tags or b >= n_tags or c >= n_tags:
                raise ValueError(f"tag index out of range: {max(a, max(b, c))} >= {n_tags}")
            counts[(a * n_tags + b) * n_tags + c] += 1
