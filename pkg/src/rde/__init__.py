"""Exact solutions and dynamics of the delayed rational system

    x_{n+1} = x_{n-k+1}^p y_n / (a y_{n-k}^p + b y_n)
    y_{n+1} = y_{n-k+1}^p x_n / (alpha x_{n-k}^p + beta x_n)
"""

from .core import (
    X,
    Y,
    BreakdownAtIndex,
    DenominatorZero,
    ExponentCapExceeded,
    InitialData,
    InsufficientData,
    RDEError,
    StructuralError,
    SystemParams,
    TheoremInapplicable,
    ValidationReport,
    ZeroAnchor,
    ZeroInitialValue,
    range_product,
    range_sum,
    validate,
)
from .linear import UVState, gap2_linear_solve, geometric_sum, uv_closed, uv_explicit, uv_initial, uv_iterate
from .closed_form import (
    ClosedFormQuery,
    closed_form_general,
    closed_form_series,
    closed_form_theorem2,
    first_zero_factor,
    reduce_to_single,
)
from .simulator import SimMode, Trajectory, TrajectoryPoint, simulate, step
from .dynamics import (
    AsymptoticClass,
    BoundaryReport,
    BoundednessCertificate,
    Verdict,
    boundary_analysis,
    boundedness_certificate,
    classify_asymptotics,
    detect_period,
    periodicity_condition,
)

__version__ = "0.1.0"
