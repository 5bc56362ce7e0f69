"""Pinned 64-bit mixing used for round keys, sampling and random generators.

Everything random in the package is derived from ``mix3``::

    splitmix64(x):
        z = (x + 0x9E3779B97F4A7C15) mod 2**64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
        return z ^ (z >> 31)

    mix3(a, b, c) = splitmix64(splitmix64(splitmix64(a) ^ b) ^ c)

Round keys are ``mix3(seed, round, vertex)``.  Other streams xor a domain tag
into the first argument so they never coincide with round keys.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

SAMPLE_TAG = 0x5A3D_0000_0000_0001
STREAM_TAG = 0x5A3D_0000_0000_0002


def splitmix64(x: int) -> int:
    z = (x + _GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def mix3(a: int, b: int, c: int) -> int:
    return splitmix64(splitmix64(splitmix64(a & MASK64) ^ (b & MASK64)) ^ (c & MASK64))


def _splitmix64_np(x: np.ndarray) -> np.ndarray:
    z = x + np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def mix3_array(a: int, b: int, c: np.ndarray) -> np.ndarray:
    """Vectorised ``mix3(a, b, c_i)``; bit-identical to the scalar form."""
    head = np.uint64(splitmix64(splitmix64(a & MASK64) ^ (b & MASK64)))
    with np.errstate(over="ignore"):
        return _splitmix64_np(np.asarray(c, dtype=np.uint64) ^ head)


def round_keys(seed: int, rnd: int, vertices) -> list[int]:
    """Activation keys for ``vertices`` in round ``rnd`` as Python ints."""
    arr = np.asarray(vertices, dtype=np.uint64)
    return mix3_array(seed, rnd, arr).tolist()


def bounded(h: int, n: int) -> int:
    """Map a 64-bit value onto ``range(n)`` by multiply-high."""
    return (h * n) >> 64


def stream(seed: int, nonce: int, count: int) -> np.ndarray:
    """``count`` pseudo-random uint64 values for (seed, nonce)."""
    return mix3_array(seed ^ STREAM_TAG, nonce, np.arange(count, dtype=np.uint64))
