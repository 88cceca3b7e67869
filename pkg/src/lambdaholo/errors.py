"""Exception types raised across the package."""


class LambdaHoloError(Exception):
    """Base class for all package errors."""


class NonHermitianInput(LambdaHoloError, ValueError):
    pass


class NonUnitaryInput(LambdaHoloError, ValueError):
    pass


class BadEnvelopeSpec(LambdaHoloError, ValueError):
    pass


class InvalidParams(LambdaHoloError, ValueError):
    pass


class GridTooCoarse(LambdaHoloError, ArithmeticError):
    """Step doubling changed the propagator by more than the tolerance."""


class NotCyclic(LambdaHoloError, ArithmeticError):
    """The computational subspace did not return to itself."""


class ParallelAxes(LambdaHoloError, ValueError):
    pass


class AngleOutOfRange(LambdaHoloError, ValueError):
    pass
