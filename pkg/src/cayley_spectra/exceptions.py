"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`CayleySpectraError`, so callers (and the CLI) can map families of
failures onto exit codes without catching unrelated bugs.
"""


class CayleySpectraError(Exception):
    """Base class for all package errors."""


class ParseError(CayleySpectraError, ValueError):
    """Malformed group table, generating-set file, family spec or manifest."""


class NotAGroup(ParseError):
    """A multiplication table fails one of the group axioms.

    ``reason`` is one of ``"no-identity"``, ``"missing-inverse"``,
    ``"non-associative"`` or ``"not-latin-square"``.
    """

    REASONS = ("no-identity", "missing-inverse", "non-associative", "not-latin-square")

    def __init__(self, reason, detail=""):
        if reason not in self.REASONS:
            raise ValueError(f"unknown NotAGroup reason {reason!r}")
        self.reason = reason
        msg = f"NotAGroup({reason})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class OrderCapExceeded(CayleySpectraError, ValueError):
    def __init__(self, order, cap):
        self.order = order
        self.cap = cap
        super().__init__(f"group order {order} exceeds the order cap {cap}")


class ValidationError(CayleySpectraError, ValueError):
    """A generating set fails a mandatory property. ``witness`` names the offender."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotSymmetric(ValidationError):
    pass


class ContainsIdentity(ValidationError):
    pass


class NotConjugationClosed(ValidationError):
    pass


class NotGenerating(ValidationError):
    pass


class TooSmall(CayleySpectraError, ValueError):
    pass


class TooLarge(CayleySpectraError, ValueError):
    def __init__(self, n, cap):
        self.n = n
        self.cap = cap
        super().__init__(f"{n} vertices exceeds the exact-enumeration cap {cap}")


class Disconnected(CayleySpectraError, ValueError):
    pass


class NoConvergence(CayleySpectraError, RuntimeError):
    pass


class NoValidSet(CayleySpectraError):
    pass
