"""Sasaki area of unit vector fields on spherical annuli.

Quick start::

    >>> from sasaki_annulus import make_annulus, minimizer_field, area
    >>> A = make_annulus(0.7)
    >>> report = area(minimizer_field(A), A)
    >>> round(report.gap, 9)
    0.0
"""

from .closed_forms import (
    bcj_bound,
    constant_field,
    ellipse_bound,
    ellipse_perimeter,
    linear_profile_field,
    minimizer_angle,
    minimizer_field,
    minimizer_slope,
    perturbed_minimizer,
    reference_bounds,
    vk_field,
)
from .errors import *  # noqa: F401,F403
from .errors import __all__ as _error_names
from .fields import (
    ClosedFormField,
    GridField,
    check_boundary_conditions,
    directional_derivatives,
    geodesic_curvatures,
    load_grid_csv,
    poincare_index,
    write_grid_csv,
)
from .functional import (
    AreaReport,
    area,
    axisymmetric_area,
    conjecture_audit,
    hi_split,
    k_conjecture,
    k_constant,
    lower_bound,
    pointwise_integrand,
)
from .kernels import BACKEND
from .optimizer import OptimizerResult, Profile, minimize_profile
from .quadrature import DEFAULT_SCHEME, ORACLE_SCHEME, QuadratureScheme
from .sphere import PUNCTURED_SPHERE, AnnulusSpec, LatLon, PuncturedSphere, frame_at, make_annulus
from .verify import run_checks

__version__ = "0.1.0"

__all__ = [
    "AnnulusSpec", "AreaReport", "BACKEND", "ClosedFormField", "DEFAULT_SCHEME", "GridField", "LatLon",
    "ORACLE_SCHEME", "OptimizerResult", "PUNCTURED_SPHERE", "Profile", "PuncturedSphere", "QuadratureScheme",
    "area", "axisymmetric_area", "bcj_bound", "check_boundary_conditions", "conjecture_audit", "constant_field",
    "directional_derivatives", "ellipse_bound", "ellipse_perimeter", "frame_at", "geodesic_curvatures", "hi_split",
    "k_conjecture", "k_constant", "linear_profile_field", "load_grid_csv", "lower_bound", "make_annulus",
    "minimize_profile", "minimizer_angle", "minimizer_field", "minimizer_slope", "perturbed_minimizer",
    "poincare_index", "pointwise_integrand", "reference_bounds", "run_checks", "vk_field", "write_grid_csv",
    *_error_names,
]
