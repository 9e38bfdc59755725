"""Exception hierarchy shared by every module of the package."""


class PentatileError(Exception):
    """Base class for all package errors."""


class DomainError(PentatileError, ValueError):
    """Parameters outside the admissible range."""


class GeometricNonexistenceError(PentatileError):
    """The requested polygon or assembly cannot be realized in the plane."""


class InternalConsistencyError(PentatileError):
    """Two independent constructions of the same point disagree."""


class PreconditionError(PentatileError, ValueError):
    pass


class MixedThetaError(PentatileError):
    """Pentagons assigned to one patch do not share theta."""


class AngleMismatchError(PentatileError):
    """A rhombus has no pentagon whose A or C corner fits its angles."""


class ChiralityConflictError(PentatileError):
    """Edge constraints force both chiralities on some rhombus."""

    def __init__(self, conflict):
        self.conflict = conflict
        super().__init__(f"chirality conflict around cycle {conflict.cycle}")


class NoUnitAtCenterError(PentatileError):
    pass


class UnsupportedHoleError(PentatileError):
    pass


class NoHoleError(PentatileError):
    pass


class DocumentError(PentatileError):
    """Malformed tiling document."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class SchemaVersionError(DocumentError):
    pass
