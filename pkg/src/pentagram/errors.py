"""Exception hierarchy shared across the package."""


class PentagramError(Exception):
    """Base class for all errors raised by this package."""


# arithmetic

class DivisionByZero(PentagramError, ZeroDivisionError):
    pass


class MixedFieldContexts(PentagramError, TypeError):
    pass


class FieldConstructionError(PentagramError, ValueError):
    pass


class FieldTooSmall(PentagramError, ValueError):
    pass


# projective geometry

class CoincidentPoints(PentagramError, ValueError):
    pass


class CoincidentLines(PentagramError, ValueError):
    pass


class NotOnLine(PentagramError, ValueError):
    pass


class DegenerateCrossRatio(PentagramError, ValueError):
    pass


# polygons and coordinates

class DegeneratePolygon(PentagramError, ValueError):
    pass


class CoordinateDegenerate(PentagramError, ValueError):
    """A corner coordinate landed in {0, 1}, i.e. off the moduli space."""


class ReconstructionDegenerate(PentagramError, ValueError):
    pass


# the map

class IndeterminatePoint(PentagramError, ArithmeticError):
    """Some denominator 1 - x_j y_j of the coordinate formula vanishes."""


class LeavesModuli(PentagramError, ArithmeticError):
    pass


class DegenerateImage(PentagramError, ArithmeticError):
    pass


class NoNondegenerateKernelVector(PentagramError, ArithmeticError):
    pass


# Lax / spectral

class SingularP(PentagramError, ArithmeticError):
    pass


class NormalizationDegenerate(PentagramError, ArithmeticError):
    pass


class SupportViolation(PentagramError, AssertionError):
    """Raised when the spectral polynomial has a monomial outside the
    expected support.  This always indicates a bug."""


class EnumerationTooLarge(PentagramError, ValueError):
    pass


class ExtensionFieldUnavailable(PentagramError, ValueError):
    pass


class InconsistentFunctionalEquation(PentagramError, ArithmeticError):
    pass


# experiments

class PopulationTooLarge(PentagramError, ValueError):
    pass


class OrbitDegenerated(PentagramError, ArithmeticError):
    def __init__(self, step, reason=""):
        self.step = step
        super().__init__(f"orbit degenerated at step {step}" + (f": {reason}" if reason else ""))
