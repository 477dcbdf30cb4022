"""Portable seeded pseudo-random numbers.

The generator is xorshift64* (Vigna 2016): a 64-bit xorshift state with
shifts (12, 25, 27) scrambled by multiplying with 0x2545F4914F6CDD1D. The
state is initialised from the user seed with one splitmix64 step so that
small or zero seeds still give a well-mixed, nonzero state. Everything is
plain integer arithmetic modulo 2**64, so streams are identical on every
platform and easy to reproduce in other languages:

    state = splitmix64(seed mod 2**64)      (replaced by 1 if zero)
    next:  x ^= x >> 12; x ^= x << 25; x ^= x >> 27
           return x * 0x2545F4914F6CDD1D  (mod 2**64)
    uniform:  (next >> 11) * 2**-53          in [0, 1)
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & _MASK) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * _MULT) & _MASK

    def uniform(self) -> float:
        """Uniform on [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform_open(self) -> float:
        """Uniform on (0, 1]."""
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    def below(self, k: int) -> int:
        """Integer uniform on ``range(k)``."""
        return min(int(self.uniform() * k), k - 1)

    def interval(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()
