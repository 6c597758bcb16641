"""Splittable 64-bit seed derivation.

Per-query seeds are derived from (master seed, index) with a splitmix64
finalizer so that query streams are reproducible and safe to generate in
parallel: derive_seed(s, i) depends only on its arguments.
"""

import random

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15  # golden-ratio increment used by splitmix64


def splitmix64(x: int) -> int:
    """One splitmix64 finalization round over a 64-bit state."""
    x = (x + _GAMMA) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def derive_seed(master: int, index: int) -> int:
    """Mix a master seed with a stream index into an independent 64-bit seed."""
    return splitmix64((master & MASK64) ^ splitmix64(index & MASK64))


def rng_for(master: int, index: int = 0) -> random.Random:
    """A private Random instance for one unit of work."""
    return random.Random(derive_seed(master, index))
