"""Seeded position initialization with a fixed, documented PRNG.

Initial positions must be reproducible bit-for-bit across implementations,
so instead of relying on any library's generator we use SplitMix64
(Steele, Lea & Flood 2014), which is a dozen lines in any language:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z XOR (z >> 31)

Uniform doubles in [0, 1) are ``output / 2**64``. Streams are consumed in
canonical node-id order, three draws per node (x, y, z).
"""

from __future__ import annotations

import math

_MASK64 = 2**64 - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Minimal SplitMix64 stream over a 64-bit seed."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def next_double(self) -> float:
        """Uniform double in [0, 1)."""
        return self.next_uint64() / 2.0**64


def mix64(value: int) -> int:
    """One stateless SplitMix64 output for ``value``; used for hash-derived
    directions and seed derivation."""
    z = (value + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def pair_offset_direction(i: int, j: int) -> tuple[float, float, float]:
    """Deterministic unit vector for a coincident node pair (i < j).

    The direction is uniform on the sphere, derived from the pair's
    canonical indices so every backend separates coincident nodes the
    same way.
    """
    h1 = mix64(((i & 0xFFFFFFFF) << 32) | (j & 0xFFFFFFFF))
    h2 = mix64(h1)
    z = 2.0 * (h1 / 2.0**64) - 1.0
    phi = 2.0 * math.pi * (h2 / 2.0**64)
    r = math.sqrt(max(0.0, 1.0 - z * z))
    return (r * math.cos(phi), r * math.sin(phi), z)
