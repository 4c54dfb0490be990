"""Shared fixtures and random-structure helpers."""

import random

import pytest

from slcong.core import SemilatticeTable, _bits, validate
from slcong.enumeration import _extend_checked

NAMED_POOL = ("chain_1", "chain_2", "chain_4", "chain_6", "b4", "n5", "m3", "f", "n6", "grid2x3")


def random_semilattice(rng: random.Random, n: int) -> SemilatticeTable:
    """A random labeled meet semilattice grown by random down-set extensions."""
    S = validate([[0]])
    while S.n < n:
        sub = rng.randrange(1 << (S.n - 1)) if S.n > 1 else 0
        mask = (sub << 1) | 1
        for x in list(_bits(mask)):
            mask |= S.below_mask[x]
        child = _extend_checked(S, mask)
        if child is not None:
            S = child
    return S


def random_tree(rng: random.Random, n: int) -> SemilatticeTable:
    """A random tree semilattice: each new element covers one existing element."""
    S = validate([[0]])
    while S.n < n:
        x = rng.randrange(S.n)
        S = _extend_checked(S, S.below_mask[x])
    return S


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5EED)
