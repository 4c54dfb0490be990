"""Finite meet semilattices as explicit operation tables.

Elements are the indices 0..n-1 and index 0 is always the least element;
``validate`` rejects tables that violate this instead of relabeling.  The
derived order is x <= y iff meet(x, y) == x.  Subsets of the carrier are
bitmasks throughout (bit i = element i).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple

from .errors import (
    ArgumentIsZero,
    MalformedTable,
    NoLeastAtZero,
    NotAssociative,
    NotCommutative,
    NotComparable,
    NotIdempotent,
    SemilatticeError,
    UnknownName,
)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Ubta(NamedTuple):
    """Upper bounded two-element antichain {a, b} with its join v."""

    a: int
    b: int
    v: int


@dataclass(frozen=True)
class UbtaFamily:
    """All UBTAs of a semilattice, repetition-free, in lexicographic (a, b) order."""

    items: tuple[Ubta, ...]

    @property
    def t(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True)
class SemilatticeTable:
    """An n-element meet semilattice given by its full n x n meet table.

    Instances are immutable and hashable; construct them through
    ``validate``, ``named`` or the builders below rather than directly.
    """

    meet: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.meet)

    @cached_property
    def below_mask(self) -> tuple[int, ...]:
        """below_mask[x] = bitmask of {z : z <= x}."""
        n = self.n
        meet = self.meet
        return tuple(
            sum(1 << z for z in range(n) if meet[z][x] == z) for x in range(n)
        )

    @cached_property
    def above_mask(self) -> tuple[int, ...]:
        """above_mask[x] = bitmask of {z : x <= z}."""
        n = self.n
        meet = self.meet
        return tuple(
            sum(1 << z for z in range(n) if meet[x][z] == x) for x in range(n)
        )

    @cached_property
    def meet_flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.meet for v in row)

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    def upper_bound_mask(self, x: int, y: int) -> int:
        return self.above_mask[x] & self.above_mask[y]

    def partial_join(self, x: int, y: int) -> int | None:
        """Least upper bound of x, y in S+, or None when {x, y} has no upper bound.

        The join is the meet of the (nonempty) upper-bound set.
        """
        if x == 0 or y == 0:
            raise ArgumentIsZero(f"partial_join is defined on S+ only, got ({x},{y})")
        ub = self.upper_bound_mask(x, y)
        if not ub:
            return None
        meet = self.meet
        it = _bits(ub)
        v = next(it)
        for z in it:
            v = meet[v][z]
        return v

    @cached_property
    def ubtas(self) -> UbtaFamily:
        items = []
        n = self.n
        for a in range(1, n):
            for b in range(a + 1, n):
                if self.leq(a, b) or self.leq(b, a):
                    continue
                if self.upper_bound_mask(a, b):
                    items.append(Ubta(a, b, self.partial_join(a, b)))
        return UbtaFamily(tuple(items))

    def interval(self, a: int, b: int) -> tuple[int, ...]:
        """The interval [a, b] = {x : a <= x <= b}, ascending."""
        if not self.leq(a, b):
            raise NotComparable(f"{a} is not below {b}")
        return tuple(_bits(self.above_mask[a] & self.below_mask[b]))

    def is_convex_subsemilattice(self, elements: Iterable[int]) -> bool:
        """True iff the set is nonempty, meet-closed and order-convex."""
        mask = 0
        for e in elements:
            mask |= 1 << e
        if not mask:
            return False
        members = list(_bits(mask))
        meet = self.meet
        for i, x in enumerate(members):
            for y in members[i:]:
                if not mask & (1 << meet[x][y]):
                    return False
        for y in range(self.n):
            if mask & (1 << y):
                continue
            if self.below_mask[y] & mask and self.above_mask[y] & mask:
                return False
        return True

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """The cover relation as (lower, upper) pairs, lexicographic."""
        n = self.n
        out = []
        for x in range(n):
            for y in range(n):
                if x == y or not self.leq(x, y):
                    continue
                between = self.above_mask[x] & self.below_mask[y]
                if between == (1 << x) | (1 << y):
                    out.append((x, y))
        return tuple(out)

    @cached_property
    def maximal_elements(self) -> tuple[int, ...]:
        return tuple(
            x for x in range(self.n) if self.above_mask[x] == 1 << x
        )

    def has_top(self) -> bool:
        return len(self.maximal_elements) == 1

    def top(self) -> int:
        if not self.has_top():
            raise SemilatticeError("no greatest element")
        return self.maximal_elements[0]

    def subsemilattice(self, elements: Iterable[int]) -> tuple["SemilatticeTable", tuple[int, ...]]:
        """Extract a meet-closed subset as a standalone semilattice.

        Returns the new table and the tuple of original element indices in
        new-index order; the subset's least element becomes index 0.
        """
        members = sorted(set(elements))
        if not members:
            raise SemilatticeError("empty subset")
        meet = self.meet
        u = members[0]
        for e in members[1:]:
            u = meet[u][e]
        member_set = set(members)
        if u not in member_set:
            raise SemilatticeError("subset is not meet-closed")
        order = [u] + [e for e in members if e != u]
        pos = {e: i for i, e in enumerate(order)}
        rows = []
        for x in order:
            row = []
            for y in order:
                m = meet[x][y]
                if m not in member_set:
                    raise SemilatticeError("subset is not meet-closed")
                row.append(pos[m])
            rows.append(tuple(row))
        return SemilatticeTable(tuple(rows)), tuple(order)

    def relabel(self, perm: list[int] | tuple[int, ...]) -> "SemilatticeTable":
        """Copy with element x renamed to perm[x]."""
        n = self.n
        inv = [0] * n
        for x in range(n):
            inv[perm[x]] = x
        meet = self.meet
        return SemilatticeTable(
            tuple(
                tuple(perm[meet[inv[p]][inv[q]]] for q in range(n))
                for p in range(n)
            )
        )

    def to_obj(self) -> dict:
        return {"n": self.n, "meet": [list(row) for row in self.meet]}

    def __repr__(self) -> str:
        return f"SemilatticeTable(n={self.n})"


def validate(raw_table) -> SemilatticeTable:
    """Check the semilattice axioms on a raw n x n table.

    Raises the InvalidTable subclass naming the first violation found in
    row-major scan order.
    """
    if not isinstance(raw_table, (list, tuple)) or len(raw_table) == 0:
        raise MalformedTable("table must be a nonempty square matrix")
    n = len(raw_table)
    rows = []
    for row in raw_table:
        if not isinstance(row, (list, tuple)) or len(row) != n:
            raise MalformedTable(f"expected {n} rows of length {n}")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise MalformedTable(f"entry {v!r} is not an element index")
        rows.append(tuple(row))
    meet = tuple(rows)
    for x in range(n):
        if meet[x][x] != x:
            raise NotIdempotent(x)
    for x in range(n):
        for y in range(x + 1, n):
            if meet[x][y] != meet[y][x]:
                raise NotCommutative(x, y)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if meet[meet[x][y]][z] != meet[x][meet[y][z]]:
                    raise NotAssociative(x, y, z)
    for x in range(n):
        if meet[0][x] != 0:
            raise NoLeastAtZero(x)
    table = SemilatticeTable(meet)
    # The axioms above already force the derived relation to be a partial
    # order; scan it anyway so a bug here can never propagate silently.
    for x in range(n):
        assert table.leq(x, x)
        for y in range(n):
            if x != y and table.leq(x, y):
                assert not table.leq(y, x), (x, y)
            for z in range(n):
                if table.leq(x, y) and table.leq(y, z):
                    assert table.leq(x, z), (x, y, z)
    return table


def leq(S: SemilatticeTable, x: int, y: int) -> bool:
    return S.leq(x, y)


def partial_join(S: SemilatticeTable, x: int, y: int) -> int | None:
    return S.partial_join(x, y)


def ubtas(S: SemilatticeTable) -> UbtaFamily:
    return S.ubtas


def from_covers(covers: list[list[int]]) -> SemilatticeTable:
    """Build a table from lower covers (used by the named catalog)."""
    n = len(covers)
    below = [1 << x for x in range(n)]
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for c in covers[x]:
                merged = below[x] | below[c]
                if merged != below[x]:
                    below[x] = merged
                    changed = True
    rows = []
    for x in range(n):
        row = []
        for y in range(n):
            common = below[x] & below[y]
            glb = next((z for z in _bits(common) if common & ~below[z] == 0), None)
            if glb is None:
                raise MalformedTable(f"elements {x},{y} have no greatest lower bound")
            row.append(glb)
        rows.append(row)
    return validate(rows)


_CHAIN_RE = re.compile(r"^chain_([1-9]\d*)$")

_NAMED_COVERS = {
    # b4: atoms 1,2 under top 3
    "b4": [[], [0], [0], [1, 2]],
    # n5: 0 < 1 < 3 < 4 and 0 < 2 < 4
    "n5": [[], [0], [0], [1], [2, 3]],
    # m3: atoms 1,2,3 under top 4
    "m3": [[], [0], [0], [0], [1, 2, 3]],
    # f ("bowtie"): atoms 1,2,3; tops 4 = 1 v 2 and 5 = 2 v 3, incomparable
    "f": [[], [0], [0], [0], [1, 2], [2, 3]],
    # n6: chain 0 < 1 < 2 < 3 beside atom 4, common top 5
    "n6": [[], [0], [1], [2], [0], [3, 4]],
}


@lru_cache(maxsize=None)
def named(name: str) -> SemilatticeTable:
    """Fixed catalog tables; labelings are documented in docs/formats.md."""
    m = _CHAIN_RE.match(name)
    if m:
        k = int(m.group(1))
        return SemilatticeTable(
            tuple(tuple(min(i, j) for j in range(k)) for i in range(k))
        )
    if name == "grid2x3":
        # direct product of the 2-chain and the 3-chain, (i, j) -> 3*i + j
        rows = []
        for i in range(2):
            for j in range(3):
                rows.append(
                    tuple(
                        3 * min(i, p) + min(j, q) for p in range(2) for q in range(3)
                    )
                )
        return SemilatticeTable(tuple(rows))
    if name in _NAMED_COVERS:
        return from_covers(_NAMED_COVERS[name])
    raise UnknownName(name)


def attach_above(S: SemilatticeTable, x: int, T: SemilatticeTable) -> SemilatticeTable:
    """Attach the tree semilattice T above element x of S.

    T's least element becomes a new element covering x; meets inside the
    copy of T are T-meets and the meet of an attached element with an old
    element y is meet_S(x, y).  The UBTA family of S is unchanged.
    """
    if T.ubtas.items:
        raise SemilatticeError("attachment must be a tree semilattice")
    if not 0 <= x < S.n:
        raise SemilatticeError(f"no element {x}")
    n, m = S.n, T.n
    rows = [[0] * (n + m) for _ in range(n + m)]
    for p in range(n):
        for q in range(n):
            rows[p][q] = S.meet[p][q]
    for p in range(m):
        for q in range(m):
            rows[n + p][n + q] = n + T.meet[p][q]
    for p in range(m):
        for q in range(n):
            rows[n + p][q] = rows[q][n + p] = S.meet[x][q]
    return validate(rows)


def extend_below(S: SemilatticeTable, k: int) -> SemilatticeTable:
    """Hang a k-element chain below the least element of S."""
    if k < 0:
        raise SemilatticeError("chain length must be nonnegative")
    if k == 0:
        return S
    n = S.n
    rows = [[0] * (n + k) for _ in range(n + k)]
    for p in range(n + k):
        for q in range(n + k):
            if p < k or q < k:
                rows[p][q] = min(p, q)
            else:
                rows[p][q] = S.meet[p - k][q - k] + k
    return validate(rows)


# ---------------------------------------------------------------------------
# Isomorphism and canonical forms.
#
# Elements are first partitioned by an iterated invariant refinement (seeded
# with down-set size, up-set size and an optional mark bit, then refined by
# the multiset of (color(z), color(x^z)) pairs).  The refinement is shared
# between tables so color ids are comparable across them.  Because the first
# seed component is the down-set size, color order is a linear extension:
# anything strictly below x gets a strictly smaller color than x.
# ---------------------------------------------------------------------------


def _refine(tables: list[SemilatticeTable], marks: list[int]) -> list[list[int]]:
    keys = []
    for S, mk in zip(tables, marks):
        bm, am = S.below_mask, S.above_mask
        keys.append(
            [
                (bm[x].bit_count(), am[x].bit_count(), (mk >> x) & 1)
                for x in range(S.n)
            ]
        )
    uniq = sorted({k for ks in keys for k in ks})
    index = {k: i for i, k in enumerate(uniq)}
    color = [[index[k] for k in ks] for ks in keys]
    nclasses = len(uniq)
    while True:
        sigs = []
        for S, col in zip(tables, color):
            meet = S.meet
            rng = range(S.n)
            sigs.append(
                [
                    (col[x], tuple(sorted((col[z], col[meet[x][z]]) for z in rng)))
                    for x in rng
                ]
            )
        uniq = sorted({s for ss in sigs for s in ss})
        if len(uniq) == nclasses:
            return color
        index = {s: i for i, s in enumerate(uniq)}
        color = [[index[s] for s in ss] for ss in sigs]
        nclasses = len(uniq)


def _swap_is_automorphism(S: SemilatticeTable, x: int, y: int) -> bool:
    meet = S.meet
    n = S.n

    def t(v: int) -> int:
        return y if v == x else x if v == y else v

    for p in range(n):
        tp = t(p)
        for q in range(p, n):
            if t(meet[p][q]) != meet[tp][t(q)]:
                return False
    return True


def _canonical_search(S: SemilatticeTable, marks: int = 0):
    """Lexicographically least relabeling consistent with the color classes.

    Returns (rows, perm): rows is the canonical certificate (row p holds the
    mark bit of the element placed at p followed by the positions of its
    meets with positions 0..p-1) and perm maps element -> position.
    """
    n = S.n
    meet = S.meet
    color = _refine([S], [marks])[0]
    members: dict[int, list[int]] = {}
    for x in range(n):
        members.setdefault(color[x], []).append(x)
    class_order = sorted(members)
    pos_class: list[int] = []
    for c in class_order:
        pos_class.extend([c] * len(members[c]))

    # interchangeability: one search branch per orbit of transposition
    # automorphisms inside a class
    group = list(range(n))

    def find(v: int) -> int:
        while group[v] != v:
            group[v] = group[group[v]]
            v = group[v]
        return v

    for c in class_order:
        elems = members[c]
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                if find(elems[i]) != find(elems[j]) and _swap_is_automorphism(
                    S, elems[i], elems[j]
                ):
                    group[find(elems[j])] = find(elems[i])

    pos_of = [-1] * n
    chosen = [-1] * n
    rows: list = [None] * n
    best: dict = {"rows": None, "perm": None}

    def rec(p: int) -> None:
        if p == n:
            cur = tuple(rows)
            if best["rows"] is None or cur < best["rows"]:
                best["rows"] = cur
                best["perm"] = pos_of.copy()
            return
        prefix_tight = best["rows"] is not None and all(
            rows[j] == best["rows"][j] for j in range(p)
        )
        cands = []
        seen = set()
        for e in members[pos_class[p]]:
            if pos_of[e] >= 0:
                continue
            g = find(e)
            if g in seen:
                continue
            seen.add(g)
            erow = meet[e]
            row = ((marks >> e) & 1,) + tuple(
                pos_of[erow[chosen[j]]] for j in range(p)
            )
            cands.append((row, e))
        cands.sort()
        for row, e in cands:
            if prefix_tight and row > best["rows"][p]:
                break
            pos_of[e] = p
            chosen[p] = e
            rows[p] = row
            rec(p + 1)
            pos_of[e] = -1
            chosen[p] = -1
            rows[p] = None

    rec(0)
    return best["rows"], best["perm"]


def canonical_key(S: SemilatticeTable, marks: int = 0):
    """Hashable canonical certificate of (S, marked subset)."""
    rows, _ = _canonical_search(S, marks)
    return rows


def canonical_with_perm(S: SemilatticeTable) -> tuple[SemilatticeTable, list[int]]:
    rows, perm = _canonical_search(S)
    n = S.n
    table = [[0] * n for _ in range(n)]
    for p in range(n):
        table[p][p] = p
        for q in range(p):
            table[p][q] = table[q][p] = rows[p][1 + q]
    return SemilatticeTable(tuple(tuple(r) for r in table)), perm


def canonical_form(S: SemilatticeTable) -> SemilatticeTable:
    """Relabeled copy such that isomorphic inputs yield identical tables."""
    return canonical_with_perm(S)[0]


def _iso_search(S1: SemilatticeTable, S2: SemilatticeTable):
    """Backtracking search for a meet-preserving bijection S1 -> S2."""
    if S1.n != S2.n:
        return None
    n = S1.n
    c1, c2 = _refine([S1, S2], [0, 0])
    if sorted(c1) != sorted(c2):
        return None
    order = sorted(range(n), key=lambda x: (c1[x], x))
    pools: dict[int, list[int]] = {}
    for y in range(n):
        pools.setdefault(c2[y], []).append(y)
    phi = [-1] * n
    used = [False] * n
    m1, m2 = S1.meet, S2.meet

    def rec(i: int):
        if i == n:
            return phi.copy()
        x = order[i]
        for y in pools.get(c1[x], ()):
            if used[y]:
                continue
            phi[x] = y
            used[y] = True
            if all(phi[m1[x][z]] == m2[y][phi[z]] for z in order[: i + 1]):
                res = rec(i + 1)
                if res is not None:
                    return res
            phi[x] = -1
            used[y] = False
        return None

    return rec(0)


def are_isomorphic(S1: SemilatticeTable, S2: SemilatticeTable) -> bool:
    return _iso_search(S1, S2) is not None


def isomorphism_witness(S1: SemilatticeTable, S2: SemilatticeTable) -> list[int] | None:
    """A meet-preserving bijection as a list phi with phi[x] in S2, or None."""
    return _iso_search(S1, S2)
