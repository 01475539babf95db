"""Seeded, splittable random streams.

Every stochastic routine takes a 64-bit seed and a stream id. The pair is fed
to a SeedSequence that keys a Philox (counter-based) bit generator, so two
streams with different ids never overlap and a run is reproducible bit for
bit from its seed.
"""

import numpy as np

from .errors import InvalidArgumentError

SEED_MAX = 2**64 - 1


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise InvalidArgumentError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise InvalidArgumentError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed, stream=0):
    """Generator for stream ``stream`` of ``seed``.

    ``stream`` may be an int or a tuple of ints (e.g. ``(trial, purpose)``).
    """
    seed = check_seed(seed)
    parts = stream if isinstance(stream, tuple) else (stream,)
    entropy = [seed & 0xFFFFFFFF, seed >> 32, *(int(p) for p in parts)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
