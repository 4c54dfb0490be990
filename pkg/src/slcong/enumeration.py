"""Isomorphism-free generation of all n-element meet semilattices.

Every n-element meet semilattice arises from an (n-1)-element one by
adding a new maximal element whose down-set is a join-closed order ideal,
because deleting any maximal element leaves a meet subsemilattice.  The
generator walks this tree with canonical augmentation: ideals are expanded
one per automorphism orbit of the parent, and a child is kept only when
its new element lands in the same orbit as a fixed deletion target of the
child's canonical form.  Each isomorphism class is therefore produced
exactly once, with no cross-parent deduplication.

``enumerate_semilattices_bruteforce`` is the independent oracle: plain
backtracking over labeled order extensions followed by isomorphism
partitioning.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .core import (
    SemilatticeTable,
    _bits,
    _refine,
    are_isomorphic,
    canonical_key,
    canonical_with_perm,
    validate,
)
from .errors import NotEnoughValues, TooLarge
from .joinsub import congruence_count
from .structure import SemilatticeClass, classify

DEFAULT_MAX_N = 9
WITNESS_CAP = 64

_ONE = SemilatticeTable(((0,),))


def enumeration_bound() -> int:
    env = os.environ.get("SLCONG_MAX_ENUM_N")
    return int(env) if env else DEFAULT_MAX_N


def _joinclosed_downset_masks(S: SemilatticeTable) -> list[int]:
    """Down-sets of S containing 0 and closed under existing joins.

    These are exactly the subsets a new maximal element can sit above while
    keeping all meets defined.
    """
    below = S.below_mask
    ubtas = S.ubtas.items
    out = []
    for sub in range(1 << (S.n - 1)):
        mask = (sub << 1) | 1
        ok = True
        for x in _bits(sub << 1):
            if below[x] & ~mask:
                ok = False
                break
        if ok:
            for a, b, v in ubtas:
                if mask >> a & 1 and mask >> b & 1 and not mask >> v & 1:
                    ok = False
                    break
        if ok:
            out.append(mask)
    return out


def _extend(S: SemilatticeTable, ideal_mask: int) -> SemilatticeTable:
    """Append a new maximal element above the given ideal."""
    n = S.n
    below = S.below_mask
    new_row = []
    for x in range(n):
        t_mask = ideal_mask & below[x]
        top = next(z for z in _bits(t_mask) if t_mask & ~below[z] == 0)
        new_row.append(top)
    rows = [S.meet[x] + (new_row[x],) for x in range(n)]
    rows.append(tuple(new_row) + (n,))
    return SemilatticeTable(tuple(rows))


def _accepted_canonical(child: SemilatticeTable) -> SemilatticeTable | None:
    """Canonical-augmentation test: keep the child iff its new element is in
    the automorphism orbit of the deletion target (the last position of the
    canonical form, which is always maximal)."""
    K, perm = canonical_with_perm(child)
    p_new = perm[child.n - 1]
    z = K.n - 1
    if p_new == z:
        return K
    colors = _refine([K], [0])[0]
    if colors[p_new] != colors[z]:
        return None
    if canonical_key(K, 1 << p_new) == canonical_key(K, 1 << z):
        return K
    return None


_levels: dict[int, tuple[SemilatticeTable, ...]] = {1: (_ONE,)}


def _level(k: int) -> tuple[SemilatticeTable, ...]:
    if k not in _levels:
        found: dict[tuple, SemilatticeTable] = {}
        for parent in _level(k - 1):
            reps: dict[tuple, int] = {}
            for mask in _joinclosed_downset_masks(parent):
                reps.setdefault(canonical_key(parent, mask), mask)
            for mask in sorted(reps.values()):
                K = _accepted_canonical(_extend(parent, mask))
                if K is not None:
                    if K.meet in found:
                        raise RuntimeError("canonical augmentation produced a duplicate")
                    found[K.meet] = K
        _levels[k] = tuple(sorted(found.values(), key=lambda S: S.meet))
    return _levels[k]


def enumerate_semilattices(n: int, max_n: int | None = None) -> list[SemilatticeTable]:
    """All n-element meet semilattices up to isomorphism, canonical and sorted."""
    if n < 1:
        raise TooLarge("n must be at least 1")
    bound = enumeration_bound() if max_n is None else max_n
    if n > bound:
        raise TooLarge(f"n={n} exceeds enumeration bound {bound}")
    return list(_level(n))


def _extend_checked(S: SemilatticeTable, mask: int) -> SemilatticeTable | None:
    """Oracle-side extension: require a greatest lower bound directly."""
    below = S.below_mask
    new_row = []
    for x in range(S.n):
        t_mask = mask & below[x]
        top = next((z for z in _bits(t_mask) if t_mask & ~below[z] == 0), None)
        if top is None:
            return None
        new_row.append(top)
    rows = [list(S.meet[x]) + [new_row[x]] for x in range(S.n)]
    rows.append(new_row + [S.n])
    return validate(rows)


def enumerate_semilattices_bruteforce(n: int, max_n: int = 7) -> list[SemilatticeTable]:
    """Independent oracle: labeled backtracking plus isomorphism partitioning.

    Generates every naturally-labeled table by extending over arbitrary
    down-sets (keeping extensions where all meets stay defined, checked
    directly), then partitions the results with the backtracking
    isomorphism test.  Shares no machinery with the orderly generator.
    """
    if n > max_n:
        raise TooLarge(f"n={n} exceeds oracle bound {max_n}")
    labeled = [_ONE]
    for _ in range(n - 1):
        nxt = []
        for S in labeled:
            below = S.below_mask
            for sub in range(1 << (S.n - 1)):
                mask = (sub << 1) | 1
                if any(below[x] & ~mask for x in _bits(mask)):
                    continue
                child = _extend_checked(S, mask)
                if child is not None:
                    nxt.append(child)
        labeled = nxt
    buckets: dict[tuple, list[SemilatticeTable]] = {}
    for S in labeled:
        fp = (
            tuple(
                sorted(
                    (S.below_mask[x].bit_count(), S.above_mask[x].bit_count())
                    for x in range(S.n)
                )
            ),
            S.ubtas.t,
        )
        buckets.setdefault(fp, []).append(S)
    reps: list[SemilatticeTable] = []
    for group in buckets.values():
        classes: list[SemilatticeTable] = []
        for S in group:
            if not any(are_isomorphic(S, R) for R in classes):
                classes.append(S)
        reps.extend(classes)
    reps.sort(key=lambda S: S.meet)
    return reps


@dataclass(frozen=True)
class Spectrum:
    """The set NCsl(n) of congruence-lattice sizes over all n-element semilattices."""

    n: int
    values: tuple[int, ...]
    witnesses: dict
    witness_totals: dict

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "values": list(self.values),
            "witness_totals": {str(k): v for k, v in sorted(self.witness_totals.items())},
            "witnesses": {
                str(k): [S.to_obj() for S in tables]
                for k, tables in sorted(self.witnesses.items())
            },
        }


def spectrum(n: int, with_witnesses: bool = False, max_n: int | None = None) -> Spectrum:
    """Exact congruence-count spectrum; witnesses are canonical tables.

    Witness storage is capped at WITNESS_CAP per value; witness_totals
    keeps the exact number of classes attaining each value.
    """
    tables = enumerate_semilattices(n, max_n=max_n)
    witnesses: dict[int, list[SemilatticeTable]] = {}
    totals: dict[int, int] = {}
    for S in tables:
        k = congruence_count(S)
        totals[k] = totals.get(k, 0) + 1
        if with_witnesses:
            bucket = witnesses.setdefault(k, [])
            if len(bucket) < WITNESS_CAP:
                bucket.append(S)
    return Spectrum(
        n=n,
        values=tuple(sorted(totals)),
        witnesses={k: tuple(v) for k, v in witnesses.items()},
        witness_totals=totals,
    )


def top_values(
    n: int, count: int, max_n: int | None = None
) -> list[tuple[int, set[SemilatticeClass]]]:
    """The ``count`` largest spectrum values with the classes of their witnesses.

    Classes are collected over every attaining semilattice, not only the
    stored witnesses.
    """
    tables = enumerate_semilattices(n, max_n=max_n)
    by_count: dict[int, list[SemilatticeTable]] = {}
    for S in tables:
        by_count.setdefault(congruence_count(S), []).append(S)
    values = sorted(by_count, reverse=True)
    if len(values) < count:
        raise NotEnoughValues(f"only {len(values)} spectrum values at n={n}")
    out = []
    for value in values[:count]:
        classes = {classify(S).semilattice_class for S in by_count[value]}
        out.append((value, classes))
    return out
