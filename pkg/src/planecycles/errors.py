"""Exception types shared across the package.

Everything raised on purpose derives from PlaneError, so callers can catch
one base class at an API boundary.  Division by zero in a field inverse
raises the builtin ZeroDivisionError.
"""


class PlaneError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeCharacteristic(PlaneError):
    """Field characteristic is not a prime."""


class DegreeZero(PlaneError):
    """Field extension degree must be >= 1."""


class OrderTooLarge(PlaneError):
    """Requested order exceeds the configured ceiling."""


class WrongKind(PlaneError):
    """Operation requires a plane of a different kind."""


class InvalidPoint(PlaneError):
    """Point id out of range or otherwise unusable."""


class InvalidLineId(PlaneError):
    """Line id out of range or otherwise unusable."""


class SamePoint(PlaneError):
    """join() needs two distinct points."""


class SameLine(PlaneError):
    """meet() needs two distinct lines."""


class NoCommonLine(PlaneError):
    """The two points lie on no common line (partial planes only)."""


class ParseError(PlaneError):
    """Plane file is syntactically malformed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class AxiomViolation(PlaneError):
    """Loaded or declared incidence data breaks an axiom of its kind."""

    def __init__(self, axiom: str, witnesses: tuple = (), message: str = ""):
        detail = message or f"axiom {axiom!r} violated"
        if witnesses:
            detail += f"; witnesses {witnesses!r}"
        super().__init__(detail)
        self.axiom = axiom
        self.witnesses = tuple(witnesses)


class BadPathStart(PlaneError):
    """Base-path start must lie on the first pencil line, away from the base point."""


class NotOnCycle(PlaneError):
    """Requested start point is not a vertex of the cycle."""


class TooLong(PlaneError):
    """Requested subpath is longer than the cycle."""


class BadSkipIndex(PlaneError):
    """Junction skip index outside its admissible range."""


class OutOfRange(PlaneError):
    """Requested cycle length outside [3, maximum admissible]."""


class AnchorFailure(PlaneError):
    """Anchor selection could not satisfy its structural guarantees."""


class TooLarge(PlaneError):
    """Exhaustive enumeration refused above the hard size cap."""


class ConstructionFailed(PlaneError):
    """No construction branch produced a verifier-approved cycle."""

    def __init__(self, branch: str, diagnostics: dict | None = None):
        super().__init__(f"construction branch {branch!r} failed: {diagnostics!r}")
        self.branch = branch
        self.diagnostics = dict(diagnostics or {})
