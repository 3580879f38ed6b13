"""Sasaki area of unit vector fields on annuli and the punctured sphere.

The area of ``V = cos(theta) e1 + sin(theta) e2`` is

    area(V) = integral of sqrt(1 + gamma^2 + delta^2) dA
            = integral of sqrt(1 + (tan(alpha) + theta_1)^2 + theta_2^2) cos(alpha) dbeta dalpha

with ``theta_1``, ``theta_2`` the derivatives of theta along the parallel and
the meridian. For axisymmetric fields this reduces to
``2 pi * integral of sqrt(1 + cos^2(alpha) theta_2^2) dalpha``.

On the annulus of half-width ``alpha0`` every field with ``theta = 0`` on the
lower and ``theta = pi`` on the upper boundary has area at least
``K(alpha0) + 2 pi^2 cos(alpha0)`` where
``K(alpha0) = 2 pi * integral of sqrt(1 - cos^2(alpha0) sec^2(alpha)) dalpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import closed_forms
from .errors import ExcludedIndex, IdentityViolation, OutsideAnnulus
from .fields import (
    AngleField,
    check_boundary_conditions,
    curvatures_from,
    directional_derivatives,
    eval_angle,
    poincare_index,
)
from .quadrature import (
    ADAPTIVE_SIMPSON,
    DEFAULT_SCHEME,
    GAUSS_LEGENDRE,
    ORACLE_SCHEME,
    QuadratureScheme,
    integrate,
)
from .sphere import HALF_PI, TWO_PI, AnnulusSpec, LatLon, PuncturedSphere

IDENTITY_TOL = 1e-10
BETA_SAMPLES = 64
LAYER_THRESHOLD = 0.05
BOUND_NOTE = (
    "Lower bound read as K(alpha0) + 2*pi^2*cos(alpha0) with K using cos^2(alpha0); "
    "the coefficient 2*pi^2 (not 2*pi) is what the equality case attains."
)
SPHERE_NOTE = (
    "Bound is pi*L(eps_k) for the field's index class k, L the perimeter of the ellipse "
    "with semi-axes |k| and |k-2|; classes 0 and 2 fall back to the index bound."
)


@dataclass(frozen=True)
class AreaReport:
    area: float
    lower_bound: Optional[float]
    k_constant: Optional[float]
    gap: Optional[float]
    scheme_used: QuadratureScheme
    estimated_quadrature_error: float
    hypotheses_hold: bool = False
    notes: str = BOUND_NOTE

    @property
    def bound_violated(self) -> bool:
        """Area below the bound by more than the quadrature error, for a field
        that satisfies the boundary hypotheses."""
        if not self.hypotheses_hold or self.gap is None:
            return False
        return self.gap < -(self.estimated_quadrature_error + 1e-12)


def pointwise_integrand(F: AngleField, p: LatLon) -> float:
    """``sqrt(1 + gamma^2 + delta^2)`` at ``p``, checked against the derivative form."""
    theta = eval_angle(F, p)
    d = directional_derivatives(F, p)
    gamma, delta = curvatures_from(theta, d.theta1, d.theta2, p.alpha)
    from_curvatures = math.sqrt(1.0 + gamma * gamma + delta * delta)
    from_derivatives = math.sqrt(1.0 + (math.tan(p.alpha) + d.theta1) ** 2 + d.theta2 ** 2)
    # written so that NaN fails too
    if not abs(from_curvatures - from_derivatives) <= IDENTITY_TOL * max(1.0, from_derivatives):
        raise IdentityViolation(
            f"curvature form {from_curvatures!r} != derivative form {from_derivatives!r} at {p}"
        )
    return from_curvatures


def area_density(F: AngleField, alpha, beta):
    """Integrand times the area element ``cos(alpha)``.

    Written as ``sqrt(cos^2 a + (sin a + d_beta theta)^2 + cos^2 a (d_alpha theta)^2)``,
    which stays bounded towards the poles.
    """
    da, db = F.partials(alpha, beta)
    ca, sa = np.cos(alpha), np.sin(alpha)
    return np.sqrt(ca * ca + (sa + db) ** 2 + (ca * da) ** 2)


def _other(q: QuadratureScheme) -> QuadratureScheme:
    if q.rule == GAUSS_LEGENDRE:
        return ORACLE_SCHEME.with_(endpoint_substitution=q.endpoint_substitution)
    return DEFAULT_SCHEME.with_(endpoint_substitution=q.endpoint_substitution)


def boundary_layer_breakpoints(A: AnnulusSpec, extra=None):
    """Breakpoints in ``u`` for annulus integrals, or None when not needed.

    As alpha0 approaches pi/2 the integrands in ``u`` change over a width of
    about ``cos(alpha0)`` next to ``u = +-pi/2``; panels are graded
    geometrically towards both ends so that layer is resolved.
    """
    pts = [] if extra is None else [np.asarray(extra, dtype=float)]
    c0 = math.cos(A.alpha0)
    if c0 < LAYER_THRESHOLD:
        d = c0 * 2.0 ** np.arange(-2, math.ceil(math.log2(0.5 / c0)))
        pts += [-(HALF_PI - d), HALF_PI - d]
    return np.concatenate(pts) if pts else None


def axisymmetric_area(F: AngleField, A: AnnulusSpec, q: QuadratureScheme = DEFAULT_SCHEME) -> float:
    """``2 pi * integral over [-alpha0, alpha0] of sqrt(1 + cos^2(alpha) theta_2^2)``."""
    if not F.axisymmetric:
        raise ValueError("axisymmetric_area needs a field with theta independent of longitude")
    # piecewise-polynomial grid fields are only smooth between their knots
    knots_u = getattr(F, "knots_u", None)
    if q.endpoint_substitution:
        breaks = boundary_layer_breakpoints(A, knots_u)
        def integrand(u):
            return np.hypot(A.dalpha_du(u), A.cos_alpha(u) * F.partial_u(u))

        return TWO_PI * integrate(integrand, -HALF_PI, HALF_PI, q, breakpoints=breaks)

    def integrand(alpha):
        da, _ = F.partials(alpha)
        return np.sqrt(1.0 + (np.cos(alpha) * da) ** 2)

    knots = None if knots_u is None else A.to_alpha(knots_u)
    return TWO_PI * integrate(integrand, -A.alpha0, A.alpha0, q, breakpoints=knots)


def _area_2d(F: AngleField, region, q: QuadratureScheme, beta_samples: int = BETA_SAMPLES) -> float:
    # periodic trapezoid rule in longitude: spectrally accurate for smooth fields
    beta = TWO_PI * np.arange(1, beta_samples + 1) / beta_samples

    def ring(alpha):
        a = np.asarray(alpha)[:, None]
        return np.mean(area_density(F, a, beta[None, :]), axis=1) * TWO_PI

    if isinstance(region, AnnulusSpec) and q.endpoint_substitution:
        return integrate(lambda u: ring(region.to_alpha(u)) * region.dalpha_du(u), -HALF_PI, HALF_PI, q,
                         breakpoints=boundary_layer_breakpoints(region))
    return integrate(ring, -region.alpha0, region.alpha0, q)


def _raw_area(F: AngleField, region, q: QuadratureScheme) -> float:
    if isinstance(region, AnnulusSpec) and F.axisymmetric:
        return axisymmetric_area(F, region, q)
    return _area_2d(F, region, q)


def area(F: AngleField, region, q: QuadratureScheme = DEFAULT_SCHEME) -> AreaReport:
    """Area of ``F`` over an annulus or the punctured sphere, with the bound.

    On an annulus the bound is the annulus lower bound; on the punctured sphere
    it is the ellipse bound for the field's index class (falling back to the
    index bound for the excluded classes 0 and 2). The quadrature error is the
    difference between Gauss-Legendre and adaptive Simpson evaluations.
    """
    value = _raw_area(F, region, q)
    check = _raw_area(F, region, _other(q))
    err = abs(value - check)

    if isinstance(region, AnnulusSpec):
        K, bound = lower_bound(region, q)
        K_check, _ = lower_bound(region, _other(q))
        err = max(err, abs(K - K_check))
        hypotheses = check_boundary_conditions(F, region, tol=1e-8).passed
        note = BOUND_NOTE
    elif isinstance(region, PuncturedSphere):
        K = None
        lat = HALF_PI - 1e-3
        k = max(poincare_index(F, "N", lat), poincare_index(F, "S", -lat))
        try:
            _, bound = closed_forms.reference_bounds(k)
        except ExcludedIndex:
            bound = closed_forms.bcj_bound(k)
        hypotheses = True
        note = SPHERE_NOTE
    else:
        raise TypeError(f"unsupported region {region!r}")
    return AreaReport(
        area=value,
        lower_bound=bound,
        k_constant=K,
        gap=value - bound,
        scheme_used=q,
        estimated_quadrature_error=err,
        hypotheses_hold=hypotheses,
        notes=note,
    )


def hi_split(alpha, A: AnnulusSpec, theta2):
    """Split ``1 + cos^2(alpha) theta_2^2`` into the squares ``H + I``.

    ``H = (r + cos(alpha0) theta_2)^2`` and
    ``I = (-cos(alpha0) sec(alpha) + r cos(alpha) theta_2)^2`` with
    ``r = sqrt(1 - cos^2(alpha0) sec^2(alpha))``. ``I`` vanishes exactly on the
    minimizer's slope.
    """
    alpha = np.asarray(alpha, dtype=float)
    theta2 = np.asarray(theta2, dtype=float)
    if np.any(np.abs(alpha) > A.alpha0 * (1.0 + 1e-12)):
        raise OutsideAnnulus(f"hi_split needs |alpha| <= {A.alpha0}")
    c0 = math.cos(A.alpha0)
    sec = 1.0 / np.cos(alpha)
    r = np.sqrt(np.maximum(1.0 - (c0 * sec) ** 2, 0.0))
    H = (r + c0 * theta2) ** 2
    I = (-c0 * sec + r * np.cos(alpha) * theta2) ** 2
    if H.ndim == 0:
        return float(H), float(I)
    return H, I


def k_integrand(alpha, A: AnnulusSpec):
    c0 = math.cos(A.alpha0)
    return np.sqrt(np.maximum(1.0 - (c0 / np.cos(alpha)) ** 2, 0.0))


def k_constant(A: AnnulusSpec, q: QuadratureScheme = DEFAULT_SCHEME) -> float:
    if q.endpoint_substitution:
        s0, c0 = math.sin(A.alpha0), math.cos(A.alpha0)

        def f(u):
            # k_integrand(alpha(u)) * dalpha/du, simplified to avoid the radicand's cancellation
            cu, su = np.cos(u), np.sin(u)
            return (s0 * cu) ** 2 / (cu * cu + (c0 * su) ** 2)

        return TWO_PI * integrate(f, -HALF_PI, HALF_PI, q, breakpoints=boundary_layer_breakpoints(A))
    return TWO_PI * integrate(lambda a: k_integrand(a, A), -A.alpha0, A.alpha0, q)


def lower_bound(A: AnnulusSpec, q: QuadratureScheme = DEFAULT_SCHEME):
    """``(K, bound)`` with ``bound = K + 2 pi^2 cos(alpha0)``."""
    K = k_constant(A, q)
    return K, K + 2.0 * math.pi ** 2 * math.cos(A.alpha0)


def k_conjecture(alpha0: float) -> float:
    """Candidate closed form ``2 pi^2 (1 - cos(alpha0))`` for K."""
    return 2.0 * math.pi ** 2 * (1.0 - math.cos(alpha0))


def conjecture_audit(alpha0_values, q: QuadratureScheme = DEFAULT_SCHEME, tol: float = 1e-9):
    """Compare quadrature K against the candidate closed form.

    Returns one dict per ``alpha0`` with the two values, their difference and
    whether they agree within ``tol``.
    """
    rows = []
    for a0 in alpha0_values:
        A = AnnulusSpec(float(a0))
        K = k_constant(A, q)
        closed = k_conjecture(A.alpha0)
        rows.append({"alpha0": A.alpha0, "K": K, "closed_form": closed,
                     "difference": K - closed, "agrees": abs(K - closed) <= tol})
    return rows


__all__ = [
    "ADAPTIVE_SIMPSON",
    "AreaReport",
    "area",
    "area_density",
    "axisymmetric_area",
    "conjecture_audit",
    "hi_split",
    "k_conjecture",
    "k_constant",
    "lower_bound",
    "pointwise_integrand",
]
