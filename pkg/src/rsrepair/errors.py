"""Exception types raised by the repair library."""


class RepairError(Exception):
    """Base class for all library errors."""


class FieldError(RepairError, ValueError):
    """Bad field parameters: composite characteristic, reducible modulus, ..."""


class DomainError(RepairError, ValueError):
    """An argument lies outside the domain of an operation (alpha == beta, duplicate points)."""


class ArityError(RepairError, ValueError):
    """A vector argument has the wrong length."""


class RankError(RepairError, ValueError):
    """A supposed basis is linearly dependent over the base field."""


class NotInSpanError(RepairError, ValueError):
    """An element is not a B-combination of the given elements."""


class CorruptionError(RepairError):
    """Over-determined interpolation input is not consistent with any low-degree polynomial."""


class SchemeInapplicable(RepairError):
    """A repair scheme's preconditions do not hold for the given code."""


class IncompleteDownload(RepairError):
    """A replacement node is missing data from a surviving node."""


class SequencingError(RepairError):
    """A protocol step was invoked out of order."""


class UnsupportedFailures(RepairError, ValueError):
    """More failures were injected than any scheme can repair."""
