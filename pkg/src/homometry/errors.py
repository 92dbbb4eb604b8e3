"""Exception types shared across the package."""


class HomometryError(Exception):
    """Base class for all package errors."""


class SingularMatrixError(HomometryError):
    pass


class NotASublatticeError(HomometryError):
    pass


class NotInLatticeError(HomometryError):
    pass


class ZeroVectorError(HomometryError):
    pass


class DegenerateDifferencesError(HomometryError):
    """The difference set does not span the ambient space."""


class EmptySetError(HomometryError):
    pass


class NotDirectError(HomometryError):
    """A Minkowski sum required to be direct is not."""


class LowerDimensionalError(HomometryError):
    """An operation requiring a full-dimensional body got a flat one."""


class LowerDimensionalTileError(LowerDimensionalError):
    """Thin-direction sets of flat tiles are infinite."""


class OriginNotInteriorError(HomometryError):
    pass


class NotLatticeConvexError(HomometryError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotATilingError(HomometryError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedDimensionError(HomometryError):
    pass


class InvalidSError(HomometryError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidParametersError(HomometryError):
    pass


class InvalidBaseError(HomometryError):
    pass


class SchemaError(HomometryError):
    """Malformed JSON input; carries the offending path."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
