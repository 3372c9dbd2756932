"""Exception hierarchy shared by every module of the package."""


class FracReduceError(Exception):
    """Base class for all errors raised by fracreduce."""


# genpoly
class NegativeExponent(FracReduceError, ValueError):
    pass


class ExponentTooLarge(FracReduceError, ValueError):
    pass


class ZeroPolynomial(FracReduceError, ValueError):
    pass


class IncompatibleDenominator(FracReduceError, ValueError):
    pass


# rootfind
class NonConvergence(FracReduceError, ArithmeticError):
    pass


# conjugate / pipeline
class ReductionError(FracReduceError):
    """The conjugate construction failed (root finder or internal check)."""


# operators
class PoleError(FracReduceError, ValueError):
    pass


class OrderOutOfRange(FracReduceError, ValueError):
    pass


class BaseMismatch(FracReduceError, ValueError):
    pass


class DomainError(FracReduceError, ValueError):
    pass


# oie_solver
class FirstKindUnsupported(FracReduceError):
    pass


class SingularStep(FracReduceError, ArithmeticError):
    pass


class DegenerateLeading(FracReduceError, ValueError):
    pass


class IllConditioned(FracReduceError, ArithmeticError):
    pass


# pipeline
class NoSolution(FracReduceError):
    """The equation has no solution in the class the solver works in."""


class ResidualAboveTolerance(NoSolution):
    """A candidate was produced but failed the residual check."""

    def __init__(self, message, residual=None, tol=None):
        super().__init__(message)
        self.residual = residual
        self.tol = tol


class SingularSolution(FracReduceError):
    """A solution exists in L^1 but blows up at the base point.

    Such solutions behave like ``(t - a)**(-gamma)`` near ``a`` and cannot be
    sampled on a grid that includes the base point.
    """


# eqparser
class EquationSyntaxError(FracReduceError, SyntaxError):
    """Syntax error in the equation DSL, with position and expected tokens."""

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class MultipleUnknowns(FracReduceError, ValueError):
    pass


class NegativeOrder(FracReduceError, ValueError):
    pass


class UnboundSymbol(FracReduceError, ValueError):
    pass
