"""Exception hierarchy shared by every biovi module."""


class BioviError(Exception):
    """Base class for all engine errors."""


class DimensionMismatch(BioviError):
    def __init__(self, left, right, context=""):
        self.left = left
        self.right = right
        where = f" in {context}" if context else ""
        super().__init__(f"dimension mismatch{where}: [{left}] vs [{right}]")


class DimensionWarning(UserWarning):
    """Emitted instead of DimensionMismatch in paper-faithful mode."""


class ExponentOverflow(BioviError):
    pass


class DivisionByZero(BioviError, ZeroDivisionError):
    pass


class ParseError(BioviError, ValueError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} at byte offset {offset}")


class UnknownUnit(ParseError):
    pass


class UnknownConstant(BioviError, KeyError):
    pass


class DomainError(BioviError, ValueError):
    """A precondition on an input value was violated.

    Subclasses name the specific guard so callers (and tests) can match on it.
    """


class ZeroFrequency(DomainError):
    pass


class NegativeFrequency(DomainError):
    pass


class ZeroConsumedTime(DomainError):
    pass


class ZeroVelocity(DomainError):
    pass


class ZeroWavelength(DomainError):
    pass


class ZeroTime(DomainError):
    pass


class ZeroMetricCoefficient(DomainError):
    pass


class NegativeSpeed(DomainError):
    pass


class ShapeMismatch(DomainError):
    pass


class ZeroArea(DomainError):
    pass


class UnknownProblem(BioviError, KeyError):
    pass


class SuperluminalInput(DomainError):
    pass


class NegativeRadicand(DomainError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"radicand of sample {index} is negative ({value!r})")


class EmptyPath(DomainError):
    pass


class WeightSumError(DomainError):
    pass


class EmptySamples(DomainError):
    pass


class ZeroVolume(DomainError):
    pass


class ZeroBaseline(DomainError):
    pass


class ZeroInterval(DomainError):
    pass


class ZeroGradeOneSum(DomainError):
    pass


class ZeroClassSum(DomainError):
    def __init__(self, grade):
        self.grade = grade
        super().__init__(f"class sum of grade {grade} is zero")


class GrazingAngle(DomainError):
    pass


class ZeroSolidAngle(DomainError):
    pass


class ZeroMean(DomainError):
    pass


class OddCenterCount(DomainError):
    pass


class ZeroTimeSpan(DomainError):
    pass


class ZeroDenominator(DomainError):
    pass


class SceneTooSmall(DomainError):
    pass


class NonMonotonicDir(BioviError, ValueError):
    pass


class EmptyLedger(BioviError, ValueError):
    pass


class FormatError(BioviError, ValueError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class InvalidParams(BioviError, ValueError):
    pass
