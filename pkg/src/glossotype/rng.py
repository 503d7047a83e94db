"""Seedable, platform-stable random streams.

Deterministic sampling has to be bit-identical across platforms and Python
versions, which rules out random.Random (shuffle/sample algorithms may
change between releases) and numpy Generator methods (same caveat). This
module implements SplitMix64, a splittable 64-bit generator defined purely
in integer arithmetic. Constants:

    increment (gamma)  0x9E3779B97F4A7C15
    mix multiplier 1   0xBF58476D1CE4E5B9
    mix multiplier 2   0x94D049BB133111EB

Stream derivation for labelled substreams (derive_seed) folds the labels
into the seed via FNV-1a 64 (offset 0xCBF29CE484222325, prime 0x100000001B3)
followed by the SplitMix64 finalizer.
"""

from __future__ import annotations

import math

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, *labels) -> int:
    """Derive an independent substream seed from a base seed and labels.

    Labels may be strings or ints; the same (seed, labels) always yields
    the same value on any platform.
    """
    h = _FNV_OFFSET
    for label in labels:
        if isinstance(label, int):
            data = label.to_bytes(8, "little", signed=False) if label >= 0 else (
                (-label).to_bytes(8, "little") + b"-"
            )
        else:
            data = str(label).encode("utf-8")
        for byte in data:
            h = ((h ^ byte) * _FNV_PRIME) & _MASK
        h = _mix64(h)
    return _mix64((seed & _MASK) ^ h)


class Stream:
    """A SplitMix64 stream with the sampling helpers the pipeline needs."""

    __slots__ = ("_state", "_gauss_spare")

    def __init__(self, seed: int):
        self._state = seed & _MASK
        self._gauss_spare: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix64(self._state)

    def random(self) -> float:
        # 53-bit mantissa, uniform in [0, 1)
        return (self.next_u64() >> 11) * (2.0**-53)

    def randrange(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        threshold = ((_MASK + 1) // n) * n
        while True:
            r = self.next_u64()
            if r < threshold:
                return r % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, population: int, k: int) -> list[int]:
        """k distinct indices from range(population) via partial Fisher-Yates."""
        if k > population:
            raise ValueError("sample larger than population")
        pool = list(range(population))
        for i in range(k):
            j = i + self.randrange(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def choices_indices(self, population: int, k: int) -> list[int]:
        """k indices drawn uniformly with replacement."""
        return [self.randrange(population) for _ in range(k)]

    def gauss(self) -> float:
        """Standard normal via Box-Muller (pair cached)."""
        if self._gauss_spare is not None:
            value = self._gauss_spare
            self._gauss_spare = None
            return value
        u1 = self.random()
        while u1 <= 0.0:
            u1 = self.random()
        u2 = self.random()
        radius = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        self._gauss_spare = radius * math.sin(theta)
        return radius * math.cos(theta)
