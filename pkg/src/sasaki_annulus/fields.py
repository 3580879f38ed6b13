"""Unit vector fields encoded by their angle function.

A field is ``V = cos(theta) e1 + sin(theta) e2`` where ``theta(alpha, beta)``
is measured from the parallel direction ``e1``. Two encodings exist:

* :class:`ClosedFormField` holds vectorised callables for theta and its
  coordinate partials.
* :class:`GridField` holds axisymmetric samples ``theta_i`` at latitudes
  ``alpha_i`` spanning an annulus. Samples are interpolated by a cubic spline
  in the coordinate ``u`` with ``sin(alpha) = sin(alpha0) sin(u)``, in which
  profiles with square-root boundary layers (such as the area minimizer) are
  smooth.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import GridFormatError, NonIntegralWinding, OutOfDomain
from .sphere import HALF_PI, TWO_PI, AnnulusSpec, LatLon, PuncturedSphere, make_annulus

Domain = Union[AnnulusSpec, PuncturedSphere]

DOMAIN_SLACK = 1e-12
MIN_LOOP_SAMPLES = 720


@dataclass(frozen=True)
class ClosedFormField:
    """Field given by an analytic angle function.

    ``d_beta`` is None for axisymmetric fields (theta independent of beta).
    All callables take broadcastable arrays ``(alpha, beta)``. On an annulus,
    ``d_u(u, beta)`` may supply the derivative with respect to the substituted
    coordinate ``u`` where ``d_alpha`` diverges at the boundary.
    """

    theta: Callable
    d_alpha: Callable
    d_beta: Optional[Callable]
    domain: Domain
    name: str = "closed-form"
    d_u: Optional[Callable] = None

    @property
    def axisymmetric(self) -> bool:
        return self.d_beta is None

    def angle(self, alpha, beta=0.0):
        return self.theta(alpha, beta)

    def partials(self, alpha, beta=0.0):
        da = self.d_alpha(alpha, beta)
        if self.d_beta is None:
            db = np.zeros_like(np.asarray(da, dtype=float))
        else:
            db = self.d_beta(alpha, beta)
        return da, db

    def partial_u(self, u, beta=0.0):
        if self.d_u is not None:
            return self.d_u(u, beta)
        alpha = self.domain.to_alpha(u)
        return self.d_alpha(alpha, beta) * self.domain.dalpha_du(u)


@dataclass(frozen=True)
class GridField:
    """Axisymmetric field sampled at latitudes covering ``[-alpha0, alpha0]``."""

    alphas: np.ndarray
    thetas: np.ndarray
    domain: AnnulusSpec
    name: str = "grid"
    _u: np.ndarray = field(init=False, repr=False, compare=False)
    _spline: Optional[CubicSpline] = field(init=False, repr=False, compare=False)
    _slopes: Optional[np.ndarray] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        alphas = np.asarray(self.alphas, dtype=float)
        thetas = np.asarray(self.thetas, dtype=float)
        if alphas.ndim != 1 or alphas.shape != thetas.shape or alphas.size < 2:
            raise GridFormatError("need matching 1-D alpha/theta arrays with at least 2 samples")
        if not (np.all(np.isfinite(alphas)) and np.all(np.isfinite(thetas))):
            raise GridFormatError("grid contains non-finite values")
        if np.any(np.diff(alphas) <= 0.0):
            raise GridFormatError("grid latitudes must be strictly increasing")
        a0 = self.domain.alpha0
        if alphas[0] < -a0 - 1e-9 or alphas[-1] > a0 + 1e-9:
            raise GridFormatError(f"grid latitudes must lie inside [-{a0}, {a0}]")
        if abs(alphas[0] + a0) > 1e-9 or abs(alphas[-1] - a0) > 1e-9:
            raise GridFormatError("grid must include both boundary latitudes -alpha0 and alpha0")
        u = self.domain.to_u(alphas)
        u[0], u[-1] = -HALF_PI, HALF_PI
        if np.any(np.diff(u) <= 0.0):
            raise GridFormatError("grid latitudes too close to resolve")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "_u", u)
        if alphas.size >= 4:
            object.__setattr__(self, "_spline", CubicSpline(u, thetas, bc_type="not-a-knot"))
            object.__setattr__(self, "_slopes", None)
        else:
            # too few samples for a spline: piecewise linear with FD slopes
            object.__setattr__(self, "_spline", None)
            object.__setattr__(self, "_slopes", np.gradient(thetas, u))

    axisymmetric = True

    @property
    def knots_u(self) -> np.ndarray:
        """Sample positions in the substituted coordinate; the spline's breakpoints."""
        return self._u

    def _theta_u(self, u):
        if self._spline is not None:
            return self._spline(u), self._spline(u, 1)
        return np.interp(u, self._u, self.thetas), np.interp(u, self._u, self._slopes)

    def angle(self, alpha, beta=0.0):
        u = self.domain.to_u(np.asarray(alpha, dtype=float))
        value, _ = self._theta_u(u)
        return value + np.zeros_like(np.asarray(beta, dtype=float))

    def partial_u(self, u, beta=0.0):
        _, dtheta_du = self._theta_u(np.asarray(u, dtype=float))
        return dtheta_du + np.zeros_like(np.asarray(beta, dtype=float))

    def partials(self, alpha, beta=0.0):
        alpha = np.asarray(alpha, dtype=float)
        u = self.domain.to_u(alpha)
        _, dtheta_du = self._theta_u(u)
        with np.errstate(divide="ignore"):
            du_dalpha = 1.0 / self.domain.dalpha_du(u)
        da = dtheta_du * du_dalpha + np.zeros_like(np.asarray(beta, dtype=float))
        return da, np.zeros_like(da)


AngleField = Union[ClosedFormField, GridField]


@dataclass(frozen=True)
class DerivativePair:
    theta1: float
    theta2: float


@dataclass(frozen=True)
class CurvaturePair:
    gamma: float
    delta: float


@dataclass(frozen=True)
class BoundaryReport:
    tangent_at_boundaries: bool
    antipodal_opposition: bool
    perpendicular_at_equator: bool
    max_violation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.tangent_at_boundaries and self.antipodal_opposition and self.perpendicular_at_equator


def _check_domain(F: AngleField, alpha) -> None:
    if not np.all(F.domain.contains(alpha, DOMAIN_SLACK)):
        raise OutOfDomain(f"latitude outside the field's domain (|alpha| <= {F.domain.alpha0})")


def eval_angle(F: AngleField, p: LatLon) -> float:
    _check_domain(F, p.alpha)
    return float(F.angle(p.alpha, p.beta))


def directional_derivatives(F: AngleField, p: LatLon) -> DerivativePair:
    """Derivatives of theta per unit arclength along e1 and e2."""
    _check_domain(F, p.alpha)
    da, db = F.partials(p.alpha, p.beta)
    return DerivativePair(float(db) / math.cos(p.alpha), float(da))


def curvatures_from(theta, theta1, theta2, alpha):
    """Geodesic curvatures of the V-curves and the V-perp-curves."""
    drift = np.tan(alpha) + theta1
    c, s = np.cos(theta), np.sin(theta)
    return c * drift + s * theta2, s * drift - c * theta2


def geodesic_curvatures(F: AngleField, p: LatLon) -> CurvaturePair:
    d = directional_derivatives(F, p)
    theta = eval_angle(F, p)
    gamma, delta = curvatures_from(theta, d.theta1, d.theta2, p.alpha)
    return CurvaturePair(float(gamma), float(delta))


def _wrap(x):
    return np.arctan2(np.sin(x), np.cos(x))


def loop_winding(thetas) -> float:
    """Number of turns of theta along a closed sampled loop.

    Successive samples are joined by the nearest branch; a jump of more than
    a quarter turn means the sampling cannot resolve the field.
    """
    steps = _wrap(np.diff(np.asarray(thetas, dtype=float)))
    if steps.size and np.max(np.abs(steps)) > HALF_PI:
        raise NonIntegralWinding("angle jumps by more than pi/2 between loop samples; refine the loop")
    return float(np.sum(steps)) / TWO_PI


def poincare_index(F: AngleField, pole: str, loop_latitude: float, samples: int = MIN_LOOP_SAMPLES) -> int:
    """Index of the field at the north (``"N"``) or south (``"S"``) pole.

    Computed from the winding ``w`` of theta along the parallel at
    ``loop_latitude`` traversed with increasing longitude: ``1 + w`` at N and
    ``1 - w`` at S. The ``1`` is the turning of the frame itself.
    """
    pole = pole.upper()
    if pole not in ("N", "S"):
        raise ValueError("pole must be 'N' or 'S'")
    _check_domain(F, loop_latitude)
    samples = max(int(samples), MIN_LOOP_SAMPLES)
    beta = np.linspace(0.0, TWO_PI, samples + 1)
    thetas = F.angle(np.full_like(beta, loop_latitude), beta)
    w = loop_winding(thetas)
    raw = 1.0 + w if pole == "N" else 1.0 - w
    nearest = round(raw)
    if abs(raw - nearest) > 0.1:
        raise NonIntegralWinding(f"winding {raw:.4f} is not close to an integer")
    return int(nearest)


def check_boundary_conditions(F: AngleField, A: AnnulusSpec, tol: float = 1e-10, samples: int = 64) -> BoundaryReport:
    """Test the annulus hypotheses on a longitude sample.

    Tangency: ``sin(theta) = 0`` on both boundary parallels. Opposition:
    ``theta = 0`` on ``-alpha0`` and ``theta = pi`` on ``alpha0`` modulo 2pi.
    Perpendicularity: ``cos(theta) = 0`` on the equator.
    """
    _check_domain(F, A.alpha0)
    beta = TWO_PI * np.arange(1, samples + 1) / samples
    lo = F.angle(np.full_like(beta, -A.alpha0), beta)
    hi = F.angle(np.full_like(beta, A.alpha0), beta)
    eq = F.angle(np.zeros_like(beta), beta)

    tangency = max(np.max(np.abs(np.sin(lo))), np.max(np.abs(np.sin(hi))))
    opposition = max(np.max(np.abs(_wrap(lo))), np.max(np.abs(_wrap(hi - math.pi))))
    perpendicular = np.max(np.abs(np.cos(eq)))
    return BoundaryReport(
        tangent_at_boundaries=bool(tangency <= tol),
        antipodal_opposition=bool(opposition <= tol),
        perpendicular_at_equator=bool(perpendicular <= tol),
        max_violation=float(max(tangency, opposition, perpendicular)),
        tolerance=tol,
    )


def load_grid_csv(path, annulus: Optional[AnnulusSpec] = None) -> GridField:
    """Read an ``alpha,theta`` CSV (radians) into a :class:`GridField`.

    Without an explicit annulus the half-width is taken from the last latitude.
    """
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            header = [h.strip() for h in next(reader)]
            if header != ["alpha", "theta"]:
                raise GridFormatError(f"expected header 'alpha,theta', got {','.join(header)!r}")
            rows = [(float(a), float(t)) for a, t in (r for r in reader if r)]
    except StopIteration:
        raise GridFormatError(f"{path}: empty file") from None
    except ValueError as exc:
        if isinstance(exc, GridFormatError):
            raise
        raise GridFormatError(f"{path}: {exc}") from None
    if len(rows) < 2:
        raise GridFormatError(f"{path}: need at least two samples")
    alphas, thetas = map(np.array, zip(*rows))
    if annulus is None:
        try:
            annulus = make_annulus(alphas[-1])
        except ValueError as exc:
            raise GridFormatError(str(exc)) from None
    return GridField(alphas, thetas, annulus, name=path.stem)


def write_grid_csv(path, alphas, thetas) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["alpha", "theta"])
        for a, t in zip(alphas, thetas):
            w.writerow([repr(float(a)), repr(float(t))])
