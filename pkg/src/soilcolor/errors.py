"""Exception hierarchy shared across the package."""


class SoilColorError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SoilColorError, ValueError):
    """Input outside the mathematical domain of an operation."""


class IlluminantMismatchError(DomainError):
    """Two colors tagged with different illuminants were combined."""


class MunsellParseError(SoilColorError, ValueError):
    """A Munsell notation string could not be parsed."""


class DataLoadError(SoilColorError, ValueError):
    """A chip-scan CSV, manifest, or image file could not be loaded."""


class EvaluationError(SoilColorError, ValueError):
    """A capture set cannot be evaluated against the given database."""
