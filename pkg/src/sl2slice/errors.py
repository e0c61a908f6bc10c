"""Exception hierarchy shared by all modules."""


class Sl2SliceError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(Sl2SliceError, ValueError):
    pass


class InvalidKnotData(Sl2SliceError, ValueError):
    """Input data does not describe a valid knot (e.g. det(V+U) = 0)."""


class DataConsistencyError(InvalidKnotData):
    """Relator words disagree with the matrices they are supposed to realize."""


class SliceMismatchError(Sl2SliceError, ValueError):
    """A representation is outside the domain required by an operation."""


class ParameterError(Sl2SliceError, ValueError):
    pass


class ComputationError(Sl2SliceError, RuntimeError):
    """An internal cross-check failed; signals a bug or a convention mismatch."""


class SchemaError(Sl2SliceError, ValueError):
    """A knot-data or representation document does not match its format."""
