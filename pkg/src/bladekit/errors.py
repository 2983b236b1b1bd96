"""Exception hierarchy shared by every bladekit module."""


class BladeError(Exception):
    """Base class for all bladekit errors."""


class TagMismatchError(BladeError, TypeError):
    """Operands disagree on field (real/complex) or backend (float/exact)."""


class DimensionError(BladeError, ValueError):
    """Shapes or ambient dimensions are incompatible."""


class UnsupportedBackendError(BladeError):
    """The requested quantity cannot be computed on this backend.

    Typically raised when a square root is needed on the exact backend.
    """


class NotSameSubspaceError(BladeError, ValueError):
    pass


class DegenerateBasisError(BladeError, ValueError):
    pass
