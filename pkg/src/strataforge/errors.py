"""Typed domain errors shared across strataforge.

Every error the library raises on bad input or unsatisfiable requests
derives from StrataforgeError. The class name doubles as the stable,
machine-readable identifier that the command line prints on stderr.
"""


class StrataforgeError(Exception):
    """Base class for all strataforge domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class UnstablePair(StrataforgeError):
    """(g, n) violates 2g - 2 + n > 0."""


class CapExceeded(StrataforgeError):
    """Requested enumeration exceeds the configured complexity cap."""


class InvalidGraph(StrataforgeError):
    """A stable-graph invariant fails (stability, connectedness, genus, legs)."""


class IndexOutOfRange(StrataforgeError):
    """An edge or marking index does not exist."""


class UnknownKey(StrataforgeError):
    """A canonical key does not decode to a valid graph of the requested type."""


class UnknownLabel(StrataforgeError):
    """A leg label is not present on the graph."""


class UnstableResult(StrataforgeError):
    """An operation would produce a space with 2g - 2 + n <= 0."""


class MissingCitation(StrataforgeError):
    """A rule needs a declared, cited fact that is absent or uncited."""


class InconsistentFacts(StrataforgeError):
    """A derivation collides with a declared negative fact."""


class DegenerateInput(StrataforgeError):
    """Numeric input outside the meaningful range (for example zero branch points)."""


class ProfileTooRamified(StrataforgeError):
    """A ramification order exceeds the covering degree."""


class InvalidSpec(StrataforgeError):
    """A ramification-cycle specification violates its own constraints."""


class DegreeTooSmall(StrataforgeError):
    """A curve degree below the minimum the formula supports."""


class SplittingInvalid(StrataforgeError):
    """A bundle splitting type that cannot occur (parts misordered or wrong sum)."""


class UniverseMismatch(StrataforgeError):
    """Arithmetic between polynomials over different variable universes."""


class NotInUniverse(StrataforgeError):
    """A variable name or index outside the declared universe."""


class DivisorZero(StrataforgeError):
    """A preset parameter that would force division by zero."""


class UsageError(StrataforgeError):
    """Malformed command-line arguments (exit status 2)."""
