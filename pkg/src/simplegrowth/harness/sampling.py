"""Seeded instance generation.

Every instance draws from its own ``numpy.random.Generator`` (PCG64) seeded
by ``SeedSequence([seed, crc32(stream), i])``, where ``stream`` names the
suite, group and check. PCG64 and ``SeedSequence`` are specified bit-exactly
by numpy, so draws do not depend on the platform or on the worker that runs
the instance.
"""

from __future__ import annotations

import zlib

import numpy as np

from ..groups import IndexedGroup
from ..normalsets import NormalSet
from ..setalg import ElementSet


def instance_rng(seed: int, stream: str, i: int) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(stream.encode()), i])


def sample_subset(G: IndexedGroup, size: int, rng: np.random.Generator) -> ElementSet:
    """Uniform ``size``-subset of the group, without replacement."""
    if not 1 <= size <= G.order:
        raise ValueError(f"subset size must be in [1, {G.order}], got {size}")
    return ElementSet.from_indices(G, rng.choice(G.order, size=size, replace=False))


def sample_size(rng: np.random.Generator, lo: int, hi: int) -> int:
    return int(rng.integers(lo, hi + 1))


def sample_normal(G: IndexedGroup, rng: np.random.Generator, with_identity: bool = True) -> NormalSet:
    """A random nonempty union of nontrivial classes, sometimes with the identity."""
    n = G.classes.count - 1
    pick = rng.random(n) < 0.5
    if not pick.any():
        pick[rng.integers(n)] = True
    ids = [int(i) + 1 for i in np.flatnonzero(pick)]
    if with_identity and rng.random() < 0.5:
        ids.insert(0, 0)
    return NormalSet.from_classes(G, ids)


def sample_pattern(G: IndexedGroup, m: int, rng: np.random.Generator) -> list[tuple[int, bool]]:
    gs = rng.integers(G.order, size=m)
    inv = rng.random(m) < 0.5
    return [(int(g), bool(v)) for g, v in zip(gs, inv)]
