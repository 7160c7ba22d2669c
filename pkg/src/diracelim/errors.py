"""Exception types shared across the package."""


class DiracelimError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolationError(DiracelimError):
    """An operation was called with arguments outside its contract."""


class OrderMismatchError(ContractViolationError):
    """Binary jet arithmetic on jets of different truncation orders."""


class OrderUnderflowError(ContractViolationError):
    """An operation would need more truncation order than the operand carries."""


class SingularityError(DiracelimError):
    """Evaluation hit a singular point: division by a vanishing quantity,
    log of zero, or a phase request where the field vanishes."""


class ExpressionError(DiracelimError):
    """Malformed field expression text.

    Carries the character position of the offending token when known.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ScenarioError(DiracelimError):
    """A scenario file violates the schema, or a point lies outside its region."""


class DegenerateFieldError(DiracelimError):
    """The elimination coefficient i*F1 + F2 is too small to invert.

    The reduction divides by this field combination; configurations where it
    vanishes (zero field included) are outside the method's domain.
    """

    def __init__(self, value, threshold):
        super().__init__(
            f"elimination coefficient i*F1 + F2 has magnitude {abs(value):.3e} "
            f"below threshold {threshold:.3e}; the field configuration is too "
            "close to the degenerate case to invert"
        )
        self.value = value
        self.threshold = threshold


class ConstraintInfeasibleError(DiracelimError):
    """Random scenario generation could not satisfy the requested bounds."""
