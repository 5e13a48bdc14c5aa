"""Exception hierarchy shared by every module."""


class MalcevError(Exception):
    """Base class for all library errors."""


class FieldMismatch(MalcevError, TypeError):
    pass


class ShapeError(MalcevError, ValueError):
    pass


class UnsupportedField(MalcevError, ValueError):
    pass


class NonSkewInput(MalcevError, ValueError):
    pass


class UnverifiedAlgebra(MalcevError):
    pass


class UnverifiedRepresentation(MalcevError):
    pass


class NotAnEmbeddingTensor(MalcevError):
    pass


class InvalidEtRepresentation(MalcevError):
    pass


class NotACocycle(MalcevError):
    pass


class InvalidSplitting(MalcevError):
    pass


class NotNijenhuis(MalcevError):
    pass


class InternalInconsistency(MalcevError):
    """Raised when coboundaries fail to be cocycles under the active formula set."""


class TooLarge(MalcevError, ValueError):
    pass


class ParseError(MalcevError, ValueError):
    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class IllTypedFormula(ShapeError):
    """A literal formula variant composes maps whose domains and codomains disagree."""
