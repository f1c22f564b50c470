"""Deterministic random streams.

Everything stochastic in this package draws from :class:`RandomStream`, a
counter-mode SplitMix64 generator (Steele, Lea & Flood, 2014).  The i-th raw
output of a stream with key ``s`` is ``mix64(s + (i+1) * GAMMA) mod 2**64``,
which only involves 64-bit integer arithmetic, so sequences are bit-identical
on every platform and can be produced scalar-by-scalar or as vectorized
batches.

Uniform doubles come from the top 53 bits of a raw output; Gaussian draws use
the Box-Muller transform (pairs are generated together and the second value
is cached).  Child streams are derived from hashable key paths with
:func:`derive_seed`, never by splitting generator state, so evaluation order
and parallel scheduling cannot perturb results.
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_INV_2_53 = 2.0 ** -53

#: Identifier persisted in run records so stored results name their generator.
SCHEME = "splitmix64-boxmuller-v1"


def mix64(x: int) -> int:
    """SplitMix64 finalizer: bijective 64-bit avalanche mix."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def _fnv1a64(text: str) -> int:
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & _MASK
    return h


def derive_seed(root: int, *keys: int | str) -> int:
    """Derive a child seed from a root seed and a key path.

    Strings are hashed with FNV-1a; integers are used directly.  Each key is
    folded into the running seed through the SplitMix64 finalizer, so
    distinct paths give statistically independent streams.
    """
    s = mix64(root)
    for key in keys:
        token = _fnv1a64(key) if isinstance(key, str) else key & _MASK
        s = mix64(s ^ token)
    return s


class RandomStream:
    """Counter-mode SplitMix64 stream with uniform and Gaussian draws."""

    __slots__ = ("key", "_counter", "_spare_normal")

    def __init__(self, seed: int):
        self.key = seed & _MASK
        self._counter = 0
        self._spare_normal = None

    def spawn(self, *keys: int | str) -> "RandomStream":
        """Independent child stream keyed by this stream's seed and ``keys``."""
        return RandomStream(derive_seed(self.key, *keys))

    def next_u64(self) -> int:
        self._counter += 1
        return mix64((self.key + self._counter * _GAMMA) & _MASK)

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        """Uniform double in [low, high) from the top 53 bits of one output."""
        u = (self.next_u64() >> 11) * _INV_2_53
        return low + (high - low) * u

    def uniform_vector(self, n: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        """Vectorized batch equal to ``n`` successive :meth:`uniform` calls."""
        start = self._counter + 1
        self._counter += n
        counters = np.arange(start, start + n, dtype=np.uint64)
        x = (np.uint64(self.key) + counters * np.uint64(_GAMMA))
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        x = x ^ (x >> np.uint64(31))
        u = (x >> np.uint64(11)).astype(np.float64) * _INV_2_53
        return low + (high - low) * u

    def below(self, n: int) -> int:
        """Integer in [0, n) via modulo reduction (bias < n / 2**64)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def normal(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Gaussian draw via Box-Muller on two uniforms; spare value cached."""
        if self._spare_normal is not None:
            z = self._spare_normal
            self._spare_normal = None
        else:
            # ((x >> 11) + 1) * 2^-53 lies in (0, 1], keeping log() finite.
            u1 = ((self.next_u64() >> 11) + 1) * _INV_2_53
            u2 = (self.next_u64() >> 11) * _INV_2_53
            r = math.sqrt(-2.0 * math.log(u1))
            theta = 2.0 * math.pi * u2
            z = r * math.cos(theta)
            self._spare_normal = r * math.sin(theta)
        return mu + sigma * z
