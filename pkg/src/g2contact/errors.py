"""Exception hierarchy shared by every module of the package."""


class G2ContactError(Exception):
    """Base class for all errors raised by g2contact."""


class DivisionByZero(G2ContactError, ZeroDivisionError):
    pass


class NotDivisible(G2ContactError):
    pass


class PoleAtPoint(G2ContactError):
    pass


class DegreeOverflow(G2ContactError):
    pass


class NonRationalPrimitive(G2ContactError):
    """The antiderivative of a rational function has a logarithmic part."""


class SingularParametrization(G2ContactError):
    pass


class DegenerateContact(G2ContactError):
    pass


class NotClosed(G2ContactError):
    pass


class LinearlyDependentBasis(G2ContactError):
    pass


class NotEigenvector(G2ContactError):
    pass


class NotG2(G2ContactError):
    pass


class NotContactSymmetry(G2ContactError):
    pass


class NotInIdeal(G2ContactError):
    pass


class IdentityFails(G2ContactError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class Inconsistent(G2ContactError):
    pass


class Underdetermined(G2ContactError):
    pass


class ResidualNonzero(G2ContactError):
    pass


class DegenerateHXX(G2ContactError):
    pass


class RoundTripFails(G2ContactError):
    pass


class ParseError(G2ContactError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}, column {column})"
        super().__init__(message + loc)
        self.line = line
        self.column = column
