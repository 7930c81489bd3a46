"""Exception hierarchy shared by the solver modules.

Numerical failures (``SingularMatrix``, ``NoConvergence``) derive from
:class:`NumericalError`; bad inputs derive from :class:`ValidationError`,
which is also a ``ValueError``. The CLI maps the two families to distinct
exit codes.
"""


class GalerkinError(Exception):
    pass


class ValidationError(GalerkinError, ValueError):
    pass


class NumericalError(GalerkinError, ArithmeticError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidInterval(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class NotDifferentiable(ValidationError):
    pass


class TruncationOutOfRange(ValidationError):
    pass


class QuadratureTooCoarse(ValidationError):
    pass


class BreakpointOrder(ValidationError):
    pass


class LambdaTooLarge(ValidationError):
    pass


class SingularMatrix(NumericalError):
    pass


class NoConvergence(NumericalError):
    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class IntegrandNotFinite(NumericalError):
    pass
