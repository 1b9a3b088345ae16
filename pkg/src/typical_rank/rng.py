"""Counter-based pseudo-random numbers that do not depend on numpy's RNG.

Word ``i`` of the stream keyed by a 64-bit ``seed`` is::

    mix(seed + (i + 1) * 0x9E3779B97F4A7C15)   (mod 2**64)

where ``mix`` is the SplitMix64 finalizer::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

A word becomes a uniform double as ``(word >> 11) * 2**-53``.  Standard
normals use Box-Muller on consecutive word pairs ``(2k, 2k+1)``::

    u1 = ((w0 >> 11) + 1) * 2**-53        # in (0, 1]
    u2 =  (w1 >> 11)      * 2**-53        # in [0, 1)
    z_2k   = sqrt(-2 ln u1) cos(2 pi u2)
    z_2k+1 = sqrt(-2 ln u1) sin(2 pi u2)

Only integer arithmetic decides the words, so streams agree bit-for-bit on
every platform; the normals agree up to the libm's ``log``/``cos``/``sin``.
"""

from __future__ import annotations

import numpy as np

__all__ = ["GOLDEN", "mix64", "stream_words", "uniforms", "normals", "derive_seed", "CounterRNG"]

GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def mix64(z):
    """SplitMix64 finalizer on a uint64 array (or Python int)."""
    if isinstance(z, (int, np.integer)):
        z = int(z) & _MASK
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def stream_words(seed: int, start: int, count: int) -> np.ndarray:
    """Words ``start .. start+count-1`` of the stream keyed by ``seed``."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    base = np.uint64(int(seed) & _MASK)
    return mix64(base + idx * np.uint64(GOLDEN))


def uniforms(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Uniform doubles in ``[0, 1)`` from words ``start ..``."""
    w = stream_words(seed, start, count)
    return (w >> np.uint64(11)).astype(np.float64) * 2.0**-53


def normals(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Standard normals ``start .. start+count-1`` of the Box-Muller stream."""
    if count <= 0:
        return np.zeros(0)
    first_pair = start // 2
    last_pair = (start + count - 1) // 2
    npairs = last_pair - first_pair + 1
    w = stream_words(seed, 2 * first_pair, 2 * npairs)
    u1 = ((w[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
    u2 = (w[1::2] >> np.uint64(11)).astype(np.float64) * 2.0**-53
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * npairs)
    z[0::2] = r * np.cos(2.0 * np.pi * u2)
    z[1::2] = r * np.sin(2.0 * np.pi * u2)
    off = start - 2 * first_pair
    return z[off : off + count]


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed number ``index`` of ``seed``.

    Equal to word ``index`` of the stream keyed by ``seed``.
    """
    return mix64((int(seed) + (int(index) + 1) * GOLDEN) & _MASK)


class CounterRNG:
    """Sequential reader over the normal stream of one seed."""

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK
        self.position = 0

    def normal(self, size) -> np.ndarray:
        shape = (size,) if isinstance(size, int) else tuple(size)
        count = int(np.prod(shape)) if shape else 1
        out = normals(self.seed, count, self.position)
        self.position += count
        return out.reshape(shape)

    def unit_vector(self, dim: int) -> np.ndarray:
        while True:
            v = self.normal(dim)
            nv = np.linalg.norm(v)
            if nv > 1e-12:
                return v / nv
