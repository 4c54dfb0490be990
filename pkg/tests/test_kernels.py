"""Differential tests: compiled kernels against the pure-Python reference."""

import itertools

import pytest

from conftest import NAMED_POOL, random_semilattice
from slcong import _kernels_py, kernels
from slcong.congruences import all_meet_congruences_bruteforce
from slcong.core import named

try:
    from slcong import _kernels as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="extension not built")


def random_constraints(rng, nbits, t):
    pair_masks, join_masks = [], []
    for _ in range(t):
        a, b, v = rng.sample(range(nbits), 3)
        pair_masks.append((1 << a) | (1 << b))
        join_masks.append(1 << v)
    return pair_masks, join_masks


def test_selected_implementation_exposed():
    assert kernels.IMPLEMENTATION in ("pure", "compiled")


def test_pure_scan_against_itertools(rng):
    for _ in range(20):
        nbits = rng.randrange(1, 9)
        pm, jm = random_constraints(rng, max(nbits, 3), rng.randrange(0, 4))
        pm = [m & ((1 << nbits) - 1) for m in pm]
        jm = [m & ((1 << nbits) - 1) for m in jm]
        naive = sum(
            1
            for mask in range(1 << nbits)
            if all(not (mask & p == p and not mask & j) for p, j in zip(pm, jm))
        )
        assert _kernels_py.scan_join_closed(nbits, pm, jm) == naive
        listed = _kernels_py.list_join_closed(nbits, pm, jm)
        assert len(listed) == naive and listed == sorted(listed)


@needs_compiled
def test_scan_differential(rng):
    for _ in range(50):
        nbits = rng.randrange(1, 15)
        pm, jm = random_constraints(rng, max(nbits, 3), rng.randrange(0, 8))
        assert compiled.scan_join_closed(nbits, pm, jm) == _kernels_py.scan_join_closed(
            nbits, pm, jm
        )
        assert compiled.list_join_closed(nbits, pm, jm) == _kernels_py.list_join_closed(
            nbits, pm, jm
        )


@needs_compiled
def test_op_compatible_differential(rng):
    for _ in range(50):
        S = random_semilattice(rng, rng.randrange(2, 8))
        flat = S.meet_flat
        ids = [rng.randrange(3) for _ in range(S.n)]
        # densify
        remap = {}
        ids = [remap.setdefault(v, len(remap)) for v in ids]
        assert compiled.op_compatible(S.n, flat, ids) == _kernels_py.op_compatible(
            S.n, flat, ids
        )


@needs_compiled
def test_congruence_closure_differential(rng):
    for _ in range(50):
        S = random_semilattice(rng, rng.randrange(2, 8))
        pairs = []
        for _ in range(rng.randrange(0, 4)):
            pairs += rng.sample(range(S.n), 2)
        assert compiled.congruence_closure(
            S.n, S.meet_flat, pairs
        ) == _kernels_py.congruence_closure(S.n, S.meet_flat, pairs)


def test_closure_is_least_congruence_containing_pairs():
    for name in NAMED_POOL:
        S = named(name)
        if S.n > 6:
            continue
        cons = all_meet_congruences_bruteforce(S)
        for x, y in itertools.combinations(range(S.n), 2):
            ids = tuple(kernels.congruence_closure(S.n, S.meet_flat, [x, y]))
            containing = [P for P in cons if P.block_id[x] == P.block_id[y]]
            assert any(P.block_id == ids for P in containing)
            # least: every containing congruence is coarser
            for P in containing:
                for a, b in itertools.combinations(range(S.n), 2):
                    if ids[a] == ids[b]:
                        assert P.block_id[a] == P.block_id[b]


def test_closure_block_ids_dense_first_occurrence(rng):
    for _ in range(20):
        S = random_semilattice(rng, rng.randrange(1, 7))
        ids = kernels.congruence_closure(S.n, S.meet_flat, [])
        assert ids == list(range(S.n))
