"""Exception hierarchy.  Everything raised by promlex derives from PromlexError."""


class PromlexError(Exception):
    pass


class MalformedInput(PromlexError):
    pass


class CycleDetected(PromlexError):
    pass


class NotNaturallyLabeled(PromlexError):
    """Raised with the violating cover pair attached as ``.pair``."""

    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"cover {pair} violates natural labeling: need a < b")


class SizeLimitExceeded(PromlexError):
    pass


class NotInLattice(PromlexError):
    pass


class NotALinearExtension(PromlexError):
    pass


class IndexOutOfRange(PromlexError, IndexError):
    pass


class NotRootedForest(PromlexError):
    pass


class NotUnionOfChains(PromlexError):
    pass


class DimensionMismatch(PromlexError):
    pass


class NotStochastic(PromlexError):
    pass


class SolverSingular(PromlexError):
    pass


class ZeroDenominator(PromlexError, ZeroDivisionError):
    pass


class NonPositiveRate(PromlexError):
    pass


class InvalidWeights(PromlexError):
    pass


class NotClosed(PromlexError):
    pass


class CapExceeded(PromlexError):
    pass


class NotInSubset(PromlexError):
    pass


class NotAGeodesic(PromlexError):
    pass
