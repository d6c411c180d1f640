"""Exception types raised across the package."""


class NormSpaceError(ValueError):
    """Base class for validation errors."""


class DimensionMismatch(NormSpaceError):
    pass


class ParameterOutOfRange(NormSpaceError):
    pass


class NonSymmetric(NormSpaceError):
    def __init__(self, i, j, a, b):
        self.pair = (i, j)
        super().__init__(f"table is not symmetric at ({i}, {j}): {a!r} != {b!r}")


class NonPositiveOffDiagonal(NormSpaceError):
    def __init__(self, i, j, value):
        self.pair = (i, j)
        super().__init__(f"distance between {i} and {j} must be positive, got {value!r}")


class TriangleViolation(NormSpaceError):
    def __init__(self, i, j, k, excess):
        self.triple = (i, j, k)
        self.excess = excess
        super().__init__(
            f"triangle inequality fails for ({i}, {j}, {k}): "
            f"d({i},{k}) exceeds d({i},{j}) + d({j},{k}) by {excess:.6g}"
        )


class TooLarge(NormSpaceError):
    pass


class SingularMatrix(NormSpaceError):
    pass


class DomainMismatch(NormSpaceError):
    pass


class CarrierMismatch(NormSpaceError):
    pass


class AnchorNotInDomain(NormSpaceError):
    pass


class DegenerateSample(NormSpaceError):
    pass


class EmptyDomain(NormSpaceError):
    pass


class ZeroCenter(NormSpaceError):
    pass


class MembershipViolation(NormSpaceError):
    def __init__(self, i, j, k, excess):
        self.triple = (i, j, k)
        self.excess = excess
        super().__init__(
            f"log-coordinates violate exp-triangle on ({i}, {j}, {k}) by {excess:.6g}"
        )


class BadDimensions(NormSpaceError):
    pass


class TooManyPoints(NormSpaceError):
    pass


class DegenerateInput(NormSpaceError):
    pass


class BadBaseIndex(NormSpaceError):
    pass
