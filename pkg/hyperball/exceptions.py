class HyperballError(Exception):
    pass


class ParseError(HyperballError):
    pass


class UsageError(HyperballError):
    pass


class MathError(HyperballError):
    """A mathematical precondition does not hold for the given input."""
    pass


class DimError(MathError):
    pass


class NotHermitian(MathError):
    pass


class NoConvergence(MathError):
    pass


class OutOfBall(MathError):
    pass


class NearSingular(MathError):
    pass


class NotUnitary(MathError):
    pass


class FormViolation(MathError):
    pass


class ReconstructionError(MathError):
    pass


class NotReducing(MathError):
    pass


class BadBasis(MathError):
    pass


class NotPositive(MathError):
    pass
