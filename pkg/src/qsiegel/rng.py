"""Counter-based random number generation.

Monte Carlo estimators draw samples in fixed-size blocks; the generator for
block b of stream s under seed q is Philox keyed by (q, s, b).  Sample i is
produced by block i // BLOCK inside a run of exactly BLOCK draws, so the value
of sample i depends only on (seed, stream, i) and never on how work is
scheduled.
"""
import numpy as np

BLOCK = 1024


def block_generator(seed, stream, block):
    """Generator for one block of one logical stream."""
    key = np.array(
        [np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(((stream & 0xFFFFFFFF) << 32) | (block & 0xFFFFFFFF))],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


def stream_normal(seed, stream, count, dim):
    """(count, dim) standard normals, reproducible per (seed, stream, index)."""
    out = np.empty((count, dim))
    for b in range(0, count, BLOCK):
        n = min(BLOCK, count - b)
        g = block_generator(seed, stream, b // BLOCK)
        out[b : b + n] = g.standard_normal((BLOCK, dim))[:n]
    return out


def stream_uniform(seed, stream, count, dim):
    out = np.empty((count, dim))
    for b in range(0, count, BLOCK):
        n = min(BLOCK, count - b)
        g = block_generator(seed, stream, b // BLOCK)
        out[b : b + n] = g.random((BLOCK, dim))[:n]
    return out
