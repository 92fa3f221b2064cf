"""Exception types shared across the package."""


class VoltClustError(Exception):
    """Base class for all errors raised by this package."""


class InvalidMatrix(VoltClustError):
    """A matrix is non-finite, non-orthogonal, or otherwise unusable."""


class InvalidSpec(VoltClustError):
    """An argument violates a documented precondition."""


class ClosureBoundExceeded(VoltClustError):
    """Generator closure grew past the allowed order (likely an infinite group)."""


class ForeignElement(VoltClustError):
    """A group element index or wrapper does not belong to this group."""


class EmptySubset(VoltClustError):
    """An operation received an empty vertex subset."""


class NotClosed(VoltClustError):
    """A walk expected to be closed is not."""


class InvalidWalk(VoltClustError):
    """A walk is not realizable in the given digraph."""


class NotWeaklyConnected(VoltClustError):
    """The operation requires a weakly connected (voltage) graph."""


class NotRooted(VoltClustError):
    """The operation requires a rooted digraph."""


class Infeasible(VoltClustError):
    """No balanced nondegenerate assignment exists (|V| < |G|)."""


class NotSurjective(VoltClustError):
    """A provided vertex-to-group map does not cover the whole group."""


class TooLarge(VoltClustError):
    """A brute-force enumeration would exceed its guard bound."""


class InsufficientBound(VoltClustError):
    """A walk-length bound is too small to be exhaustive."""


class ShapeError(VoltClustError):
    """Array dimensions do not match the instance."""


class StepTooLarge(VoltClustError):
    """The integration step violates the explicit-scheme stability guard."""


class Diverged(VoltClustError):
    """The integration produced a non-finite state."""


class CriterionNotMet(VoltClustError):
    """The convergence criterion does not cover this instance."""


class ParseError(VoltClustError):
    """An instance file or inline spec could not be parsed."""


class InternalError(VoltClustError):
    """A mathematically guaranteed invariant failed; indicates a bug."""
