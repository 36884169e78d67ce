"""Portable noise source: xoshiro256** seeded through splitmix64.

numpy ships PCG64, Philox, SFC64 and MT19937 but not the xoshiro family,
and the test signals must be reproducible bit for bit from the published
constants in any language, so the generator is spelled out here.
"""

from __future__ import annotations

import numpy as np

MASK = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK


def splitmix64(state: int):
    """Infinite splitmix64 stream; used only to expand a seed into 256 bits."""
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        yield z ^ (z >> 31)


class Xoshiro256:
    """xoshiro256** 1.0."""

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be nonnegative")
        sm = splitmix64(seed & MASK)
        self.s = [next(sm) for _ in range(4)]

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK, 7) * 9) & MASK
        t = (s[1] << 17) & MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self, n: int) -> np.ndarray:
        """``n`` doubles in ``[0, 1)`` from the top 53 bits of each output."""
        return np.array([(self.next_u64() >> 11) * 2.0 ** -53 for _ in range(n)])


def noise(L: int, seed: int) -> np.ndarray:
    """Real noise uniform on ``[-1, 1)``."""
    return 2.0 * Xoshiro256(seed).uniform(L) - 1.0
