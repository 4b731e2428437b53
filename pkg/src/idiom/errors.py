"""Exception classes shared by every module.

The CLI reports a failure by the class name, so names are part of the
public surface.
"""


class IdiomError(Exception):
    """Base class for all computation errors."""


class ParseError(IdiomError):
    pass


class CycleDetected(IdiomError):
    pass


class NoBounds(IdiomError):
    pass


class NotALattice(IdiomError):
    pass


class SizeLimit(IdiomError):
    pass


class OutOfInterval(IdiomError):
    pass


class ElementBelowBase(IdiomError):
    pass


class MixedLattices(IdiomError):
    pass


class NotBasic(IdiomError):
    pass


class NotBasicOperator(IdiomError):
    pass


class NotTotal(IdiomError):
    pass


class NotInflator(IdiomError):
    pass


class NotNucleus(IdiomError):
    pass


class NotDivision(IdiomError):
    pass


class NotMorphism(IdiomError):
    pass


class InvalidAllocation(IdiomError):
    pass


class InvalidAspect(IdiomError):
    pass


class InvalidSeq(IdiomError):
    pass


class NoLength(IdiomError):
    """A filtration stabilised strictly below the top."""


class NotInert(IdiomError):
    pass


class Absent(IdiomError):
    """No decomposition exists (exhaustive search, small lattices only)."""


class Unknown(IdiomError):
    """Search gave up on a lattice too large to trust an exhaustive negative."""


class NotPrime(IdiomError):
    pass


class GenerationFailed(IdiomError):
    pass
