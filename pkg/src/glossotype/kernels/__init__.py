"""Counting kernels with backend selection at import time.

The compiled extension (_speedups, built from _speedups.pyx) is preferred;
the pure-Python module is the fallback. GLOSSOTYPE_KERNELS=python forces
the fallback, GLOSSOTYPE_KERNELS=c makes a missing extension an error.
benchmarks/bench_kernels.py compares the two.
"""

import os

_requested = os.environ.get("GLOSSOTYPE_KERNELS", "").strip().lower()
if _requested not in ("", "c", "python"):
    raise ImportError(
        f"GLOSSOTYPE_KERNELS must be 'c' or 'python', not {_requested!r}"
    )

if _requested == "python":
    from . import pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "c":
            raise
        from . import pure as _impl

BACKEND: str = _impl.BACKEND
count_char_ngrams = _impl.count_char_ngrams
count_tag_triples = _impl.count_tag_triples

__all__ = ["BACKEND", "count_char_ngrams", "count_tag_triples"]
