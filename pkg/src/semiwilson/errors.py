"""Exception types raised across the package."""


class SemiwilsonError(Exception):
    """Base class for every error raised by this package."""


class FormatError(SemiwilsonError):
    """A text or JSON input could not be parsed.

    ``line`` and ``col`` are 1-based positions in the offending source.
    """

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class OutOfRangeEntry(SemiwilsonError):
    def __init__(self, x, y, value=None):
        self.x, self.y, self.value = x, y, value
        super().__init__(f"table entry ({x},{y}) = {value} is out of range")


class NotAssociative(SemiwilsonError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"not associative at (x,y,z) = {triple}")


class UnsupportedOrder(SemiwilsonError):
    pass


class NotBijective(SemiwilsonError):
    pass


class NotMultiplicative(SemiwilsonError):
    def __init__(self, x, y):
        self.x, self.y = x, y
        super().__init__(f"sigma(xy) != sigma(x)sigma(y) at (x,y) = ({x},{y})")


class NotInvolutive(SemiwilsonError):
    def __init__(self, x):
        self.x = x
        super().__init__(f"sigma(sigma(x)) != x at x = {x}")


class EmptyMeasure(SemiwilsonError):
    pass


class NonCentralAtom(SemiwilsonError):
    def __init__(self, z):
        self.z = z
        super().__init__(f"atom {z} is not in the center")


class DuplicateAtom(SemiwilsonError):
    def __init__(self, z):
        self.z = z
        super().__init__(f"atom {z} appears more than once")


class IllConditioned(SemiwilsonError):
    """A pivot fell inside the guard band (eps, 100*eps)."""

    def __init__(self, column, magnitude, eps):
        self.column, self.magnitude, self.eps = column, magnitude, eps
        super().__init__(
            f"pivot {magnitude:.3e} in column {column} lies in the guard band "
            f"({eps:.1e}, {100 * eps:.1e})"
        )


class SideConditionViolated(SemiwilsonError):
    def __init__(self, name, witness=None):
        self.name, self.witness = name, witness
        super().__init__(f"side condition {name} violated" + (f": {witness}" if witness is not None else ""))


class SelfCheckFailed(SemiwilsonError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"constructed pair has residual {residual:.3e}")


class NotASolution(SemiwilsonError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"(f, g) is not a solution: residual {residual:.3e}")


class ZeroFunction(SemiwilsonError):
    pass


class LambdaNotFound(SemiwilsonError):
    def __init__(self, deviation):
        self.deviation = deviation
        super().__init__(f"smear(f) is not proportional to f (deviation {deviation:.3e})")


class HypothesisFails(SemiwilsonError):
    def __init__(self, x, y, deviation):
        self.x, self.y, self.deviation = x, y, deviation
        super().__init__(f"F(xy) = F(x)G(y) - F(y)G(x) fails at ({x},{y}) by {deviation:.3e}")


class UnknownSuite(SemiwilsonError):
    pass


class CorpusEmpty(SemiwilsonError):
    pass
