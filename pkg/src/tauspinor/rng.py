"""SplitMix64 stream used by the randomized verification suites.

Reference algorithm (all arithmetic mod 2**64)::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

Doubles in [0, 1) take the top 53 bits: (z >> 11) * 2**-53. Normals come
from Box-Muller on consecutive pairs of uniforms (u1 -> 1 - u1 to avoid log 0).
Any language that follows these three rules reproduces the same draws.
"""
from __future__ import annotations

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


class SplitMix64:
    def __init__(self, seed: int = 0) -> None:
        self.state = np.uint64(seed % 2**64)

    def next_u64(self, n: int) -> np.ndarray:
        steps = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = self.state + steps * _GAMMA
            self.state = z[-1] if n else self.state
            z = (z ^ (z >> np.uint64(30))) * _M1
            z = (z ^ (z >> np.uint64(27))) * _M2
        return z ^ (z >> np.uint64(31))

    def uniform(self, size, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        n = int(np.prod(size))
        u = (self.next_u64(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        return (low + (high - low) * u).reshape(size)

    def normal(self, size) -> np.ndarray:
        n = int(np.prod(size))
        u = self.uniform(2 * n).reshape(2, n)
        r = np.sqrt(-2.0 * np.log(1.0 - u[0]))
        return (r * np.cos(2 * np.pi * u[1])).reshape(size)

    def unit_vectors(self, n: int) -> np.ndarray:
        v = self.normal((n, 3))
        return v / np.linalg.norm(v, axis=1, keepdims=True)

    def spinors(self, n: int, dim: int) -> np.ndarray:
        """``n`` normalized complex vectors of length ``dim``."""
        z = self.normal((n, dim)) + 1j * self.normal((n, dim))
        return z / np.linalg.norm(z, axis=1, keepdims=True)
