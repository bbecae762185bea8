"""Exception types shared across the package."""


class CxtvError(Exception):
    """Base class for all package errors."""


class DependentSetError(CxtvError, ValueError):
    """A spanning set was linearly dependent; `index` is the first offending vector."""

    def __init__(self, index: int, msg: str = ""):
        self.index = index
        super().__init__(msg or f"dependent set at index {index}")


class UnsupportedDimensionError(CxtvError, ValueError):
    pass


class NoBarycenterError(CxtvError, ValueError):
    pass


class HypothesisViolation(CxtvError, ValueError):
    """Parameters fall outside the range where a construction is valid."""


class InstanceError(CxtvError, ValueError):
    """Malformed or inconsistent instance data."""


class RingMismatch(CxtvError, ValueError):
    pass
