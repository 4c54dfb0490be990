"""Tree congruence, quasi-tree decomposition and the extremal classifier.

The tree congruence collapses every upper bounded two-element antichain
onto the interval between its meet and its join; quotienting by it always
yields a tree.  A quasi-tree is a semilattice whose tree congruence has
exactly one nonsingleton block, the nucleus; the quotient is the skeleton.
The classifier assigns one of the extremal classes from structural
predicates alone and cross-checks the congruence count computed by the
counting route -- it never infers the class from the count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .congruences import (
    Partition,
    congruence_generated,
    is_meet_congruence,
    quotient,
)
from .core import SemilatticeTable, are_isomorphic, named
from .errors import (
    NotConvexSubsemilattice,
    NotQuasiTree,
    SemilatticeError,
)
from .joinsub import congruence_count


class SemilatticeClass(enum.Enum):
    TREE = "Tree"
    NUCLEUS_B4 = "NucleusB4"
    NUCLEUS_N5 = "NucleusN5"
    NUCLEUS_F = "NucleusF"
    NUCLEUS_N6 = "NucleusN6"
    OTHER = "Other"


# congruence-count coefficients c in k = c * 2^(n-6) for the named classes
_COEFFICIENT = {
    SemilatticeClass.NUCLEUS_B4: 28,
    SemilatticeClass.NUCLEUS_N5: 26,
    SemilatticeClass.NUCLEUS_F: 25,
    SemilatticeClass.NUCLEUS_N6: 25,
}

_NUCLEUS_NAMES = (
    ("b4", SemilatticeClass.NUCLEUS_B4),
    ("n5", SemilatticeClass.NUCLEUS_N5),
    ("f", SemilatticeClass.NUCLEUS_F),
    ("n6", SemilatticeClass.NUCLEUS_N6),
)


def scaled_threshold(c: int, n: int) -> int:
    """c * 2^(n-6) as an exact integer (compared as 64k vs c*2^n below n = 6)."""
    if n >= 6:
        return c << (n - 6)
    den = 1 << (6 - n)
    if c % den:
        raise SemilatticeError(f"{c}*2^({n}-6) is not an integer")
    return c // den


def tree_congruence(S: SemilatticeTable) -> Partition:
    """The congruence generated by all pairs (a^b, a v b) over UBTAs {a, b}."""
    pairs = [(S.meet[a][b], v) for a, b, v in S.ubtas]
    return congruence_generated(S, pairs)


def is_tree(S: SemilatticeTable) -> bool:
    """True iff no two incomparable elements have an upper bound."""
    return not S.ubtas.items


def is_quasi_tree(S: SemilatticeTable) -> bool:
    """True iff the tree congruence has exactly one nonsingleton block."""
    tcon = tree_congruence(S)
    return sum(1 for b in tcon.blocks if len(b) > 1) == 1


def nucleus(S: SemilatticeTable) -> tuple[int, ...]:
    """The unique nonsingleton block of the tree congruence."""
    tcon = tree_congruence(S)
    big = [b for b in tcon.blocks if len(b) > 1]
    if len(big) != 1:
        raise NotQuasiTree(f"tree congruence has {len(big)} nonsingleton blocks")
    return big[0]


def nucleus_table(S: SemilatticeTable) -> SemilatticeTable:
    """The nucleus as a standalone meet semilattice (block minimum relabeled to 0)."""
    return S.subsemilattice(nucleus(S))[0]


def skeleton(S: SemilatticeTable) -> SemilatticeTable:
    """The quotient by the tree congruence, which is always a tree."""
    if not is_quasi_tree(S):
        raise NotQuasiTree("semilattice is not a quasi-tree")
    return quotient(S, tree_congruence(S))[0]


def convex_block_congruence_check(
    S: SemilatticeTable, elements
) -> tuple[bool, bool]:
    """Evaluate both sides of the single-nonsingleton-block criterion.

    For a convex subsemilattice X with least element u, returns
    (condition_b, is_congruence) where condition_b states that u^c = v^c
    for every c outside the filter of u and every maximal v of X, and
    is_congruence checks the partition with X as its only nonsingleton
    block directly.  The two are provably equal.
    """
    members = sorted(set(elements))
    if len(members) < 2 or not S.is_convex_subsemilattice(members):
        raise NotConvexSubsemilattice(str(members))
    meet = S.meet
    u = members[0]
    for e in members[1:]:
        u = meet[u][e]
    member_set = set(members)
    maximal = [
        v for v in members if all(w == v or not S.leq(v, w) for w in members)
    ]
    condition_b = all(
        meet[u][c] == meet[v][c]
        for c in range(S.n)
        if not S.leq(u, c)
        for v in maximal
    )
    blocks = [tuple(members)] + [(x,) for x in range(S.n) if x not in member_set]
    P = Partition.from_blocks(S.n, blocks)
    return condition_b, is_meet_congruence(S, P)


@dataclass(frozen=True)
class ClassificationReport:
    """Outcome of the extremal classification of one semilattice."""

    semilattice_class: SemilatticeClass
    n: int
    congruence_count: int
    ubta_count: int
    nucleus: tuple[int, ...] | None
    skeleton: SemilatticeTable | None
    predicted_count: int | None

    def to_obj(self) -> dict:
        return {
            "class": self.semilattice_class.value,
            "n": self.n,
            "congruence_count": self.congruence_count,
            "ubta_count": self.ubta_count,
            "nucleus": list(self.nucleus) if self.nucleus is not None else None,
            "skeleton": self.skeleton.to_obj() if self.skeleton is not None else None,
            "predicted_count": self.predicted_count,
        }


def classify(S: SemilatticeTable) -> ClassificationReport:
    """Assign the extremal class by structural predicates only.

    The congruence count comes from the independent subset-counting route
    and is cross-checked against the class prediction; a mismatch would be
    an implementation bug and raises.
    """
    if S.n < 2:
        raise SemilatticeError("classification needs n >= 2")
    k = congruence_count(S)
    t = S.ubtas.t
    nuc: tuple[int, ...] | None = None
    skel: SemilatticeTable | None = None
    predicted: int | None = None
    if is_tree(S):
        cls = SemilatticeClass.TREE
        predicted = 1 << (S.n - 1)
    elif is_quasi_tree(S):
        nuc = nucleus(S)
        skel = skeleton(S)
        nuc_table = S.subsemilattice(nuc)[0]
        cls = SemilatticeClass.OTHER
        for name, candidate in _NUCLEUS_NAMES:
            if nuc_table.n == named(name).n and are_isomorphic(nuc_table, named(name)):
                cls = candidate
                predicted = scaled_threshold(_COEFFICIENT[candidate], S.n)
                break
    else:
        cls = SemilatticeClass.OTHER
    if predicted is not None and predicted != k:
        raise RuntimeError(
            f"class {cls.value} predicts {predicted} congruences, counted {k}"
        )
    return ClassificationReport(
        semilattice_class=cls,
        n=S.n,
        congruence_count=k,
        ubta_count=t,
        nucleus=nuc,
        skeleton=skel,
        predicted_count=predicted,
    )
