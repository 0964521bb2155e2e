"""Seed handling shared by the experiment harnesses and the CLI.

Trial ``i`` of a run with master seed ``s`` uses
``numpy.random.SeedSequence(entropy=s, spawn_key=(i,))``. The derivation is
a pure function of ``(s, i)``, so results do not depend on worker count or
scheduling order.
"""

from __future__ import annotations

import numpy as np

SEED_MAX = 2**64 - 1


def trial_seed(master: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=master, spawn_key=(index,))


def fresh_master_seed() -> int:
    """Draw a 64-bit master seed from OS entropy."""
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])
