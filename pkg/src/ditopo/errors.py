"""Exception hierarchy shared by all modules.

Everything that a caller can provoke with legal-but-unsatisfiable inputs
derives from DomainError; the CLI maps those to exit code 2.  Broken data
structures (malformed paths, bad points) raise ValueError subclasses.
"""


class DitopoError(Exception):
    """Base class for all package-specific errors."""


class DomainError(DitopoError):
    """A well-formed request with no answer (unreachable pair, etc.)."""


class InvalidPoint(DitopoError, ValueError):
    """A point that violates its structural invariants."""


class InvalidPath(DitopoError, ValueError):
    """A path that violates monotonicity, incidence, or range invariants."""


class EndpointMismatch(DomainError):
    """Concatenation of two paths whose junction points differ."""


class OutOfRange(DitopoError, ValueError):
    """Evaluation parameter outside [0, 1]."""


class PatchNotFound(DomainError):
    """A patch id that does not exist in the planner."""


class NoGlobalSection(DomainError):
    """A single-patch section was required but the planner has several."""


class NotConnected(DomainError):
    """Operation requires a connected underlying undirected graph."""


class Unreachable(DomainError):
    """No directed path joins the requested pair."""


class InfiniteTraceSpace(DomainError):
    """A directed cycle can be inserted, so trace classes are unbounded."""


class NotRegular(DomainError):
    """A product factor lacks the ordered-regular flag."""


class NotIso(DomainError):
    """A relation matrix is not invertible over the integers."""


class PVSyntaxError(DitopoError, ValueError):
    """Malformed PV program text."""


class UnbalancedLocks(DitopoError, ValueError):
    """P/V actions on some semaphore do not alternate P,V,P,V,... per process."""


class DimensionMismatch(DitopoError, ValueError):
    """Sphere points whose coordinate count does not match the dimension."""
