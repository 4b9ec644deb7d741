"""Exception hierarchy. The CLI maps each family to an exit code."""


class BPolyError(Exception):
    """Base class for all package errors."""


class ParseError(BPolyError, ValueError):
    """Malformed text or JSON input."""


class InvalidDigraphError(BPolyError, ValueError):
    """Vertex out of range, bad pairing, overlapping modification sets."""


class PreconditionError(BPolyError, ValueError):
    """Input lies outside the class a routine or identity applies to."""


class WorkBoundExceeded(PreconditionError):
    """Enumeration would exceed the configured work bound."""


class NotPlanarError(PreconditionError):
    """Rotation system fails the Euler check."""


class UnknownCheckError(BPolyError, KeyError):
    """Check id not present in the registry."""


class InternalAssertionError(BPolyError, AssertionError):
    """An internal consistency guard tripped."""


class NonzeroRemainder(InternalAssertionError):
    """Exact division left a remainder."""


class FamilyDegreeError(InternalAssertionError):
    """Interpolated B^(m) disagrees with a direct evaluation."""
