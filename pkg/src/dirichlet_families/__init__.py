"""Numerics for families of general Dirichlet series.

Evaluation with truncation control, spectral and arithmetic zeta distances,
convergence diagnostics, Perron inversion and Laplace-Stieltjes seminorms.
"""

from .errors import DomainError, ParseError, ResourceError
from .series_core import (
    EvalResult,
    GeneralDirichletSeries,
    GeometricTail,
    PowerTail,
    QuadraticTail,
    abscissa_estimate,
    classical_series,
    evaluate,
    evaluate_derivative,
    hurwitz_zeta,
    partial_sum,
    riemann_zeta,
    series_difference,
    truncation_bound,
)
from .spectra import (
    Spectrum,
    catalog,
    circle_spectrum,
    projective_plane_spectrum,
    series_to_eigenvalues,
    sphere_spectrum,
    spectrum_to_series,
)
from .zeta_metric import DistanceResult, MetricConfig, bounded_distance, manifold_distance
from .arithmetic import (
    RATIONALS,
    QuadraticField,
    Rationals,
    SplittingType,
    dedekind_zeta_eval,
    field_distance,
    field_distance_euler,
    kronecker_symbol,
    l_function_eval,
    local_factor,
    primorial_experiment,
    splitting_type,
)
from .convergence import (
    PerronConfig,
    SeriesFamily,
    column_limits,
    family_report,
    l1_distance,
    linf_coefficient_distance,
    multiplicative_sup_norm,
    perron_sum,
    pointwise_check,
    window_sum,
)
from .stieltjes import (
    NormEstimate,
    PiecewiseLinearFunction,
    StepFunction,
    final_diagnostic,
    lip_norm_estimate,
    ls_transform_eval,
    step_from_series,
    wid_norm_estimate,
)

__version__ = "0.1.0"
