"""Counter-based pseudo-random numbers (splitmix64 output mix).

Every sample is a pure function of (seed, counter), so Monte Carlo runs are
reproducible across platforms and safe to draw concurrently from disjoint
counter ranges.  Seeds are always explicit; there is no hidden global state.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U64 = 0xFFFFFFFFFFFFFFFF


def splitmix64(counters):
    """Apply the splitmix64 finalizer to an array of uint64 counters."""
    z = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def random_uint64(seed, count, offset=0):
    """The splitmix64 stream for `seed`, entries offset..offset+count-1."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        ctr = np.uint64(int(seed) & _U64) + idx * _GOLDEN
    return splitmix64(ctr)


def random_uniform(seed, count, offset=0):
    """Deterministic float64 samples in [0, 1) from the counter stream."""
    bits = random_uint64(seed, count, offset)
    # top 53 bits give the usual dyadic uniform on [0, 1)
    return (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53
