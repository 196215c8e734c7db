"""Exception hierarchy shared by all modules."""


class CayleyKronError(ValueError):
    """Base class for every error raised by this package."""


class DimensionError(CayleyKronError):
    pass


class NotHermitian(CayleyKronError):
    pass


class NotUnitary(CayleyKronError):
    pass


class NoConvergence(CayleyKronError):
    pass


class Singular(CayleyKronError):
    pass


class UnitEigenvalue(CayleyKronError):
    pass


class NotUnitModulus(CayleyKronError):
    pass


class OutsideDomain(CayleyKronError):
    """The pair (A, B) has U_A (x) U_B with eigenvalue 1.

    ``pair`` holds the eigenvalues (x of U_A, y of U_B) whose product is
    closest to 1.
    """

    def __init__(self, message, pair=None, distance=None):
        super().__init__(message)
        self.pair = pair
        self.distance = distance


class NotRankOne(CayleyKronError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotFactorable(CayleyKronError):
    pass


class NoSafePhase(CayleyKronError):
    pass


class ZeroEigenvalue(CayleyKronError):
    pass


class NoRealCompanion(CayleyKronError):
    pass


class DimensionCap(CayleyKronError):
    pass


class PathDisagreement(CayleyKronError):
    """Spectral and direct verdicts of an identity check disagree."""


class ParseError(CayleyKronError):
    pass
