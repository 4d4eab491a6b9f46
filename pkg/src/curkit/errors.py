"""Exception hierarchy shared by every module."""


class CurError(ValueError):
    """Base class for all errors raised by curkit."""


class InvalidVertex(CurError):
    pass


class CapacityExceeded(CurError):
    pass


class NotAFace(CurError):
    pass


class NotAFacet(CurError):
    pass


class GroundNotVertexSet(CurError):
    pass


class EmptyGround(CurError):
    pass


class NotFree(CurError):
    pass


class NotSubcomplex(CurError):
    pass


class BadInput(CurError):
    pass


class Unbounded(CurError):
    pass


class NeedsConvexUnion(CurError):
    pass


class NotATree(CurError):
    pass


class NonGenericInput(CurError):
    """A geometric input violates a full-dimensionality assumption."""


class FailedVerification(CurError):
    """A construction produced a representation that does not verify.

    This signals a bug: every generator re-checks its output before returning.
    """


class ParseError(CurError):
    pass
