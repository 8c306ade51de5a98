"""Exception hierarchy for gframekit."""


class GFrameError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(GFrameError, ValueError):
    pass


class NotHermitian(GFrameError, ValueError):
    pass


class NotPositiveDefinite(GFrameError, ValueError):
    pass


class NoConvergence(GFrameError, RuntimeError):
    pass


class NotAFrame(GFrameError):
    """The family has no positive lower frame bound."""


class NotARepresentation(GFrameError):
    """Coefficients do not synthesize the given vector."""


class NotRieszBasis(GFrameError):
    pass


class NotUnitary(GFrameError, ValueError):
    pass


class NotDualPair(GFrameError):
    pass


class LocalPairNotDual(GFrameError):
    pass


class UnknownIndex(GFrameError, KeyError):
    pass


class SingularSplitting(GFrameError):
    pass


class SingularOperator(GFrameError, ValueError):
    pass


class IndexOutOfRange(GFrameError, ValueError):
    pass


class InvalidGrouping(GFrameError, ValueError):
    pass


class InvalidLattice(GFrameError, ValueError):
    pass


class InfeasibleSpec(GFrameError, ValueError):
    pass


class ParseError(GFrameError):
    """Input is not well-formed JSON."""


class ValidationError(GFrameError, ValueError):
    """Input parsed but violates the file schema.

    ``field`` names the offending location, e.g. ``elements[2].matrix``.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
