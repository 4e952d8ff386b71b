"""Exception types shared across the package."""


class HeckeCellsError(Exception):
    """Base class for all package errors."""


class UnsupportedType(HeckeCellsError):
    """The requested Coxeter type is infinite or outside the supported range."""


class BudgetExceeded(HeckeCellsError):
    """A configured element/table/time budget would be (or was) exhausted."""


class PropertyViolation(HeckeCellsError):
    """A structural invariant failed; this signals an implementation bug."""


class UnrecognizedRing(HeckeCellsError):
    """No classification rule matched the fusion ring of a diagonal H-cell.

    Carries a fingerprint of the offending ring for manual study.
    """

    def __init__(self, message: str, fingerprint=None):
        super().__init__(message)
        self.fingerprint = fingerprint


class CorruptCache(HeckeCellsError):
    """A cache file failed structural validation."""


class VersionMismatch(HeckeCellsError):
    """A cache file was written with an incompatible format or normalization."""
