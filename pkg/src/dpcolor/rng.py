"""Seed handling.

Every randomized operation takes an explicit 64-bit seed. Sub-streams
(per trial, per edge, per color stage) get their own seed via a
splitmix64 mix of the parent seed and an integer key path, so results do
not depend on call order or on how work is scheduled across workers.
"""

import random

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
    return seed


def derive(seed, *keys):
    """Child seed for the key path ``keys`` under ``seed``."""
    s = check_seed(seed)
    for k in keys:
        s = splitmix64(s ^ splitmix64(int(k) & MASK64))
    return s


def np_rng(seed):
    """numpy Generator (PCG64) for bulk draws."""
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def py_rng(seed):
    """``random.Random`` for exact big-integer draws (``randrange``)."""
    return random.Random(check_seed(seed))
