"""Numerical verification of the component elimination of the Dirac equation.

The four-component Dirac equation in an external electromagnetic potential can
be reduced to a single fourth-order equation for one component, with the other
three recovered by differentiation.  This package makes that reduction, the
accompanying gauge realification and the current-conservation bookkeeping
executable: every manipulation is checked as a numerical identity on truncated
Taylor jets, cross-checked against a finite-difference oracle that never
touches the jet arithmetic.
"""

from .errors import (
    ConstraintInfeasibleError,
    ContractViolationError,
    DegenerateFieldError,
    DiracelimError,
    ExpressionError,
    OrderMismatchError,
    OrderUnderflowError,
    ScenarioError,
    SingularityError,
)
from .jets import Jet

__version__ = "0.1.0"

__all__ = [
    "Jet",
    "DiracelimError",
    "ContractViolationError",
    "OrderMismatchError",
    "OrderUnderflowError",
    "SingularityError",
    "ExpressionError",
    "ScenarioError",
    "DegenerateFieldError",
    "ConstraintInfeasibleError",
    "__version__",
]
