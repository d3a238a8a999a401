"""Seedable portable pseudo-random generator for the randomized suites.

SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
generators", OOPSLA 2014).  Pure 64-bit integer arithmetic, so the sample
sequence for a given seed is identical on every platform and trivially
reproducible in any language; reports driven by it are byte-stable.
"""

from __future__ import annotations

from .poly import Rat

_MASK = (1 << 64) - 1


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), bias-free via rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (_MASK + 1) - ((_MASK + 1) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.below(hi - lo + 1)

    def rational(self, max_num: int = 50, max_den: int = 50) -> Rat:
        """Random p/q with |p| <= max_num and 1 <= q <= max_den."""
        return Rat(self.randint(-max_num, max_num), self.randint(1, max_den))

    def nonzero_rational(self, max_num: int = 50, max_den: int = 50) -> Rat:
        while True:
            value = self.rational(max_num, max_den)
            if value != 0:
                return value
