"""Exception hierarchy shared across the package."""


class FocalImagesError(Exception):
    """Base class for all package errors."""


class DimensionError(FocalImagesError):
    """Operands have incompatible shapes or variable counts."""


class DomainError(FocalImagesError):
    """Input is outside the mathematical domain of the operation."""


class StructuralError(FocalImagesError):
    """A matrix system's declared shape is internally inconsistent."""


class SystemInvalidError(FocalImagesError):
    """A matrix system failed validation (symmetry law or regularity)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PreconditionError(FocalImagesError):
    """An operation was called on data that violates its precondition."""


class NoRegularPointError(FocalImagesError):
    """Bounded search exhausted without finding a regular point."""


class GenerationError(FocalImagesError):
    """A generator could not satisfy its constraints within its retry budget."""


class FileFormatError(FocalImagesError):
    """A serialized system or model could not be parsed."""


class RankDeficientSample(FocalImagesError):
    """A numeric sample hit a singular point; the caller should resample."""


class AmbiguousRankError(FocalImagesError):
    """Numeric rank estimates disagree across samples beyond the outlier allowance."""

    def __init__(self, message, histogram=None):
        super().__init__(message)
        self.histogram = histogram
