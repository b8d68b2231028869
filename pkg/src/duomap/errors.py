"""Exception hierarchy shared by every solver module."""


class DuomapError(Exception):
    """Base class for all errors raised by duomap."""


class PermutationMismatch(DuomapError, ValueError):
    """The two strings are not letter permutations of each other."""


class InvalidMatching(DuomapError, ValueError):
    """A set of edges is not a consecutive matching of the graph."""


class EdgeAlreadyRemoved(DuomapError, KeyError):
    pass


class PreconditionViolated(DuomapError, ValueError):
    pass


class EpsilonOutOfRange(DuomapError, ValueError):
    pass


class SizeGuardExceeded(DuomapError, RuntimeError):
    """Projected enumeration work is above the configured candidate budget."""


class InstanceTooLarge(DuomapError, ValueError):
    """The exact solvers refuse instances with more edges than their cap."""


class ParseError(DuomapError, ValueError):
    pass
