"""Exception types shared across the package.

``InvalidTable`` subclasses identify which semilattice axiom a raw meet
table violates and carry the first offending elements; everything else
signals a broken precondition of an individual operation.
"""


class SemilatticeError(Exception):
    pass


class InvalidTable(SemilatticeError):
    """A raw meet table failed validation."""


class NotIdempotent(InvalidTable):
    def __init__(self, x):
        super().__init__(f"meet({x},{x}) != {x}")
        self.element = x


class NotCommutative(InvalidTable):
    def __init__(self, x, y):
        super().__init__(f"meet({x},{y}) != meet({y},{x})")
        self.pair = (x, y)


class NotAssociative(InvalidTable):
    def __init__(self, x, y, z):
        super().__init__(f"meet(meet({x},{y}),{z}) != meet({x},meet({y},{z}))")
        self.triple = (x, y, z)


class NoLeastAtZero(InvalidTable):
    def __init__(self, x):
        super().__init__(f"meet(0,{x}) != 0, element 0 is not the least element")
        self.element = x


class MalformedTable(InvalidTable):
    """Shape or range problems that precede the axiom checks."""


class ArgumentIsZero(SemilatticeError):
    pass


class NotComparable(SemilatticeError):
    pass


class UnknownName(SemilatticeError):
    pass


class SizeMismatch(SemilatticeError):
    pass


class TooLarge(SemilatticeError):
    pass


class TooManyUbtas(SemilatticeError):
    pass


class NotACongruence(SemilatticeError):
    pass


class NotALattice(SemilatticeError):
    pass


class ContainsZero(SemilatticeError):
    pass


class NotJoinClosed(SemilatticeError):
    pass


class NotQuasiTree(SemilatticeError):
    pass


class NotConvexSubsemilattice(SemilatticeError):
    pass


class NotEnoughValues(SemilatticeError):
    pass


class DualityViolation(SemilatticeError):
    pass
