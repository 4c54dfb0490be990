import pytest

from conftest import NAMED_POOL
from slcong import kernels
from slcong.congruences import (
    Partition,
    _set_partition_ids,
    all_lattice_congruences,
    all_meet_congruences,
    all_meet_congruences_bruteforce,
    congruence_generated,
    count_interval_block_equivalences,
    is_lattice,
    is_meet_congruence,
    join_table_flat,
    quotient,
)
from slcong.core import are_isomorphic, named
from slcong.enumeration import enumerate_semilattices
from slcong.errors import NotACongruence, NotALattice, SizeMismatch, TooLarge
from slcong.structure import tree_congruence


def lattice_congruences_oracle(S):
    """Bell scan filtered by compatibility with both operations."""
    jf = join_table_flat(S)
    mf = S.meet_flat
    return [
        ids
        for ids in _set_partition_ids(S.n)
        if kernels.op_compatible(S.n, mf, ids) and kernels.op_compatible(S.n, jf, ids)
    ]


# --- Partition ---------------------------------------------------------------


def test_partition_normal_form():
    P = Partition.from_blocks(4, [[3, 1], [2, 0]])
    assert P.blocks == ((0, 2), (1, 3))
    assert P.block_id == (0, 1, 0, 1)
    assert Partition.from_block_id(P.block_id).blocks == P.blocks


def test_partition_from_blocks_errors():
    with pytest.raises(SizeMismatch):
        Partition.from_blocks(3, [[0, 1]])
    with pytest.raises(SizeMismatch):
        Partition.from_blocks(3, [[0, 1], [1, 2]])


def test_partition_refines():
    fine = Partition.identity(4)
    coarse = Partition.single_block(4)
    mid = Partition.from_blocks(4, [[0, 1], [2], [3]])
    assert fine.refines(mid) and mid.refines(coarse)
    assert not coarse.refines(mid)


def test_partition_json():
    P = Partition.from_blocks(3, [[1, 2], [0]])
    assert P.to_obj() == {"blocks": [[0], [1, 2]]}


# --- recognition ---------------------------------------------------------------


def test_identity_and_full_are_congruences():
    for name in NAMED_POOL:
        S = named(name)
        assert is_meet_congruence(S, Partition.identity(S.n))
        assert is_meet_congruence(S, Partition.single_block(S.n))


def test_b4_two_block_congruence():
    b4 = named("b4")
    P = Partition.from_blocks(4, [[1, 3], [0, 2]])
    assert is_meet_congruence(b4, P)
    Q = Partition.from_blocks(4, [[1, 2], [0, 3]])
    assert not is_meet_congruence(b4, Q)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        is_meet_congruence(named("b4"), Partition.identity(3))


# --- enumeration of congruences -------------------------------------------------


@pytest.mark.parametrize(
    "name,count", [("chain_4", 8), ("b4", 7), ("m3", 12), ("n5", 13), ("f", 25), ("n6", 25)]
)
def test_congruence_counts(name, count):
    assert len(all_meet_congruences(named(name))) == count


def test_fast_path_matches_bell_oracle():
    pool = [named(name) for name in NAMED_POOL]
    for n in range(1, 7):
        pool += enumerate_semilattices(n)
    for S in pool:
        fast = all_meet_congruences(S)
        slow = all_meet_congruences_bruteforce(S)
        assert [P.blocks for P in fast] == [P.blocks for P in slow]


def test_chain_congruence_counts_powers():
    for n in range(2, 11):
        assert len(all_meet_congruences(named(f"chain_{n}"))) == 1 << (n - 1)


def test_too_large():
    with pytest.raises(TooLarge):
        all_meet_congruences(named("chain_11"))
    with pytest.raises(TooLarge):
        all_meet_congruences_bruteforce(named("chain_9"))


def test_blocks_convex_and_meet_closed():
    # every block of every congruence, all semilattices with n <= 7
    for n in range(1, 8):
        for S in enumerate_semilattices(n):
            for P in all_meet_congruences(S):
                for block in P.blocks:
                    assert S.is_convex_subsemilattice(block)


def test_chain_congruences_are_interval_partitions():
    # on chains: congruence iff every block is an interval
    chain = named("chain_5")
    for ids in _set_partition_ids(5):
        P = Partition.from_block_id(ids)
        intervals = all(
            block == tuple(range(block[0], block[-1] + 1)) for block in P.blocks
        )
        assert is_meet_congruence(chain, P) == intervals


# --- generated congruences -------------------------------------------------------


def test_generated_empty():
    assert congruence_generated(named("b4"), []).is_identity()


def test_generated_chain_collapse():
    P = congruence_generated(named("chain_3"), [(0, 2)])
    assert P.blocks == ((0, 1, 2),)


def test_generated_b4_pair():
    P = congruence_generated(named("b4"), [(1, 3)])
    assert P.blocks == ((0, 2), (1, 3))


def test_generated_is_least_containing():
    for n in range(2, 7):
        for S in enumerate_semilattices(n):
            cons = all_meet_congruences(S)
            for x in range(S.n):
                for y in range(x + 1, S.n):
                    P = congruence_generated(S, [(x, y)])
                    containing = [Q for Q in cons if Q.relates(x, y)]
                    assert any(P.blocks == Q.blocks for Q in containing)
                    assert all(P.refines(Q) for Q in containing)


# --- quotients -------------------------------------------------------------------


def test_quotient_by_identity():
    S = named("n5")
    Q, blocks = quotient(S, Partition.identity(S.n))
    assert are_isomorphic(Q, S)
    assert blocks == tuple((x,) for x in range(S.n))


def test_quotient_by_full():
    Q, _ = quotient(named("b4"), Partition.single_block(4))
    assert Q.n == 1


def test_quotient_n5_tree_congruence():
    S = named("n5")
    Q, _ = quotient(S, tree_congruence(S))
    assert Q.n == 1


def test_quotient_rejects_non_congruence():
    with pytest.raises(NotACongruence):
        quotient(named("b4"), Partition.from_blocks(4, [[1, 2], [0, 3]]))


def test_quotient_meet_is_blockwise():
    S = named("grid2x3")
    P = tree_congruence(S)
    Q, blocks = quotient(S, P)
    bid = P.block_id
    for x in range(S.n):
        for y in range(S.n):
            assert Q.meet[bid[x]][bid[y]] == bid[S.meet[x][y]]


# --- lattice congruences -----------------------------------------------------------


def test_is_lattice():
    assert is_lattice(named("b4"))
    assert is_lattice(named("chain_3"))
    assert not is_lattice(named("f"))
    vee = named("chain_1")
    assert is_lattice(vee)


def test_lattice_congruences_counts():
    assert len(all_lattice_congruences(named("b4"))) == 4
    assert len(all_lattice_congruences(named("n5"))) == 5
    for n in range(2, 7):
        assert len(all_lattice_congruences(named(f"chain_{n}"))) == 1 << (n - 1)


def test_lattice_congruences_match_oracle():
    for name in ("b4", "n5", "m3", "grid2x3", "chain_4", "n6"):
        S = named(name)
        impl = [P.block_id for P in all_lattice_congruences(S)]
        assert sorted(impl) == sorted(lattice_congruences_oracle(S))


def test_lattice_congruences_need_top():
    with pytest.raises(NotALattice):
        all_lattice_congruences(named("f"))


# --- interval-block equivalences -----------------------------------------------------


def test_interval_block_counts():
    assert count_interval_block_equivalences(named("grid2x3")) == 34
    assert count_interval_block_equivalences(named("chain_6")) == 32
    assert count_interval_block_equivalences(named("chain_1")) == 1


def test_interval_block_bound():
    with pytest.raises(TooLarge):
        count_interval_block_equivalences(named("chain_11"))
