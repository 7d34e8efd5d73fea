"""Exception hierarchy shared by the library and the command line."""


class RingShapedError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(RingShapedError, ValueError):
    """A physical parameter or quantum number is out of its allowed range."""


class ComplexBeta(InvalidParameter):
    """The exact-mode index sqrt(upsilon**2 - 1/4) is not real."""


class SingularityError(RingShapedError, ValueError):
    """Evaluation requested on a singular point of the potential."""


class NumericalInstability(RingShapedError, ArithmeticError):
    """A finite-difference evaluation was requested outside its stable range."""


class NUError(RingShapedError, ArithmeticError):
    """Base class for failures of the hypergeometric-type reduction."""


class NoRealK(NUError):
    pass


class DegenerateProblem(NUError):
    pass


class NotPerfectSquare(NUError):
    pass


class NoAdmissibleBranch(NUError):
    pass


class UnsupportedSigma(NUError):
    pass


class OracleError(RingShapedError, RuntimeError):
    """Base class for finite-difference eigensolver failures."""


class Unconverged(OracleError):
    pass


class BoxTooSmall(OracleError):
    pass
