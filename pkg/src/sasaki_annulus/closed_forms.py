"""Closed-form fields and reference bounds.

The annulus minimizer has angle ``arcsin(cot(alpha0) tan(alpha)) + pi/2``,
running from 0 on the lower boundary to pi on the upper one. The ``V_k``
fields on the twice-punctured sphere turn ``k - 1`` times along each parallel
and are parallel along meridians; their area equals ``pi`` times the
perimeter of the ellipse with semi-axes ``|k|`` and ``|k - 2|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundarySingularity, ExcludedIndex, OutsideAnnulus
from .fields import ClosedFormField
from .sphere import HALF_PI, PUNCTURED_SPHERE, AnnulusSpec, LatLon

INTEGRATION_CONSTANT = HALF_PI
BOUNDARY_GAP = 1e-9


@dataclass(frozen=True)
class MinimizerSpec:
    alpha0: float
    integration_constant: float = INTEGRATION_CONSTANT


@dataclass(frozen=True)
class EllipseBound:
    k: int
    semi_axes: tuple
    perimeter: float
    bound: float


def minimizer_angle(alpha, A: AnnulusSpec):
    alpha = np.asarray(alpha, dtype=float)
    ratio = np.tan(alpha) / math.tan(A.alpha0)
    if np.any(np.abs(ratio) > 1.0 + 1e-12):
        raise OutsideAnnulus(f"latitude outside [-{A.alpha0}, {A.alpha0}]")
    # arcsin(ratio) as atan2 with the factored cosine: arcsin loses half the digits near +-1
    root = np.sqrt(np.maximum(np.sin(A.alpha0 - alpha) * np.sin(A.alpha0 + alpha), 0.0))
    out = np.arctan2(np.sin(alpha) * math.cos(A.alpha0), root) + INTEGRATION_CONSTANT
    return out if out.ndim else float(out)


def _slope(alpha, alpha0):
    # cos(a0) / (cos(a) sqrt(cos^2 a - cos^2 a0)), radicand factored to avoid cancellation
    s0 = math.sin(alpha0)
    sa = np.sin(alpha)
    with np.errstate(divide="ignore", invalid="ignore"):
        return math.cos(alpha0) / (np.cos(alpha) * np.sqrt((s0 - sa) * (s0 + sa)))


def _slope_u(u, alpha0):
    # slope times dalpha/du; bounded up to the boundary
    c0 = math.cos(alpha0)
    return c0 / (np.cos(u) ** 2 + (c0 * np.sin(u)) ** 2)


def minimizer_slope(alpha, A: AnnulusSpec):
    """Meridian derivative of the minimizer angle; diverges at the boundary."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any(np.abs(alpha) > A.alpha0 - BOUNDARY_GAP):
        raise BoundarySingularity("minimizer slope is unbounded at |alpha| = alpha0")
    out = _slope(alpha, A.alpha0)
    return out if out.ndim else float(out)


def minimizer_field(A: AnnulusSpec) -> ClosedFormField:
    a0 = A.alpha0

    def theta(alpha, beta):
        return minimizer_angle(alpha, A) + np.zeros_like(np.asarray(beta, dtype=float))

    def d_alpha(alpha, beta):
        return _slope(alpha, a0) + np.zeros_like(np.asarray(beta, dtype=float))

    def d_u(u, beta):
        return _slope_u(u, a0) + np.zeros_like(np.asarray(beta, dtype=float))

    return ClosedFormField(theta, d_alpha, None, A, name="minimizer", d_u=d_u)


def constant_field(value: float = HALF_PI, domain=PUNCTURED_SPHERE) -> ClosedFormField:
    def theta(alpha, beta):
        return np.full(np.broadcast(np.asarray(alpha), np.asarray(beta)).shape, float(value))

    def d_alpha(alpha, beta):
        return np.zeros(np.broadcast(np.asarray(alpha), np.asarray(beta)).shape)

    return ClosedFormField(theta, d_alpha, None, domain, name="constant")


def linear_profile_field(A: AnnulusSpec) -> ClosedFormField:
    """Angle rising linearly from 0 to pi across the annulus."""
    a0 = A.alpha0
    slope = math.pi / (2.0 * a0)

    def theta(alpha, beta):
        return slope * (np.asarray(alpha) + a0) + np.zeros_like(np.asarray(beta, dtype=float))

    def d_alpha(alpha, beta):
        return np.full(np.broadcast(np.asarray(alpha), np.asarray(beta)).shape, slope)

    return ClosedFormField(theta, d_alpha, None, A, name="linear")


def bump(alpha, A: AnnulusSpec):
    """``sin(pi (alpha + alpha0) / (2 alpha0))``, vanishing on both boundaries."""
    return np.sin(math.pi * (np.asarray(alpha) + A.alpha0) / (2.0 * A.alpha0))


def perturbed_minimizer(A: AnnulusSpec, eps: float) -> ClosedFormField:
    a0 = A.alpha0
    w = math.pi / (2.0 * a0)

    def theta(alpha, beta):
        return minimizer_angle(alpha, A) + eps * bump(alpha, A) + np.zeros_like(np.asarray(beta, dtype=float))

    def d_alpha(alpha, beta):
        alpha = np.asarray(alpha)
        return _slope(alpha, a0) + eps * w * np.cos(w * (alpha + a0)) + np.zeros_like(np.asarray(beta, dtype=float))

    def d_u(u, beta):
        alpha = A.to_alpha(u)
        extra = eps * w * np.cos(w * (alpha + a0)) * A.dalpha_du(u)
        return _slope_u(u, a0) + extra + np.zeros_like(np.asarray(beta, dtype=float))

    return ClosedFormField(theta, d_alpha, None, A, name=f"minimizer{eps:+g}*bump", d_u=d_u)


def vk_angle(k: int, p: LatLon) -> float:
    return (k - 1) * p.beta + HALF_PI


def vk_field(k: int, domain=PUNCTURED_SPHERE) -> ClosedFormField:
    def theta(alpha, beta):
        return (k - 1) * np.asarray(beta, dtype=float) + HALF_PI + np.zeros_like(np.asarray(alpha, dtype=float))

    def d_alpha(alpha, beta):
        return np.zeros(np.broadcast(np.asarray(alpha), np.asarray(beta)).shape)

    def d_beta(alpha, beta):
        return np.full(np.broadcast(np.asarray(alpha), np.asarray(beta)).shape, float(k - 1))

    return ClosedFormField(theta, d_alpha, d_beta, domain, name=f"V_{k}")


def agm_ellipe(m: float, ratio: float | None = None) -> float:
    """Complete elliptic integral of the second kind E(m), parameter m = k^2.

    ``ratio = sqrt(1 - m)`` may be passed directly to avoid the rounding of
    ``1 - m``.
    """
    if not 0.0 <= m < 1.0:
        raise ValueError("parameter m must lie in [0, 1)")
    a, b = 1.0, math.sqrt(1.0 - m) if ratio is None else ratio
    c2_sum = 0.5 * m  # the n = 0 term 2^-1 c0^2
    power = 0.5
    for _ in range(64):
        # remaining terms are O(c^4); an ulp-level c times 2^n would only add noise
        if abs(a - b) <= 1e-14 * a:
            break
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        power *= 2.0
        c2_sum += power * c * c
    return math.pi / (2.0 * a) * (1.0 - c2_sum)


def _check_index(k: int) -> None:
    if k in (0, 2):
        raise ExcludedIndex(f"index class k={k} gives a degenerate ellipse; no bound is defined")


def ellipse_perimeter(k: int) -> float:
    """Length of the ellipse x^2/k^2 + y^2/(k-2)^2 = 1."""
    _check_index(k)
    a, b = sorted((abs(k), abs(k - 2)), reverse=True)
    r = b / a
    return 4.0 * a * agm_ellipe((1.0 - r) * (1.0 + r), ratio=r)


def ellipse_bound(k: int) -> EllipseBound:
    perimeter = ellipse_perimeter(k)
    return EllipseBound(k, (abs(k), abs(k - 2)), perimeter, math.pi * perimeter)


def bcj_bound(k: int) -> float:
    """Index bound on the punctured sphere with indices k at N and 2 - k at S."""
    return 0.5 * (math.pi + abs(k) + abs(2 - k) - 2.0) * 4.0 * math.pi


def reference_bounds(k: int):
    """``(bcj, bcgn)``: the index bound and the sharper ellipse bound."""
    _check_index(k)
    return bcj_bound(k), math.pi * ellipse_perimeter(k)
