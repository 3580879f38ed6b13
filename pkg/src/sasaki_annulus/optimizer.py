"""Discrete minimization of the axisymmetric area over angle profiles.

A profile samples theta at latitudes ``-alpha0 = alpha_0 < ... < alpha_n =
alpha0`` with the end values pinned to 0 and pi. Its discrete area is the
midpoint rule ``sum 2 pi dalpha_i sqrt(1 + cos^2(mid_i) s_i^2)`` over
segments with slopes ``s_i``. Nodes are uniform in ``u`` with
``sin(alpha) = sin(alpha0) sin(u)``, which clusters them near the boundary
where the minimizer's slope diverges.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .closed_forms import minimizer_angle
from .errors import NotConverged
from .fields import GridField, write_grid_csv
from .functional import axisymmetric_area
from .sphere import HALF_PI, AnnulusSpec

log = logging.getLogger(__name__)

STEP_RULES = ("adaptive", "reset")


@dataclass(frozen=True)
class Profile:
    alpha0: float
    nodes: np.ndarray
    thetas: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        thetas = np.asarray(self.thetas, dtype=float)
        if nodes.shape != thetas.shape or nodes.size < 2:
            raise ValueError("nodes and thetas must be matching arrays of length >= 2")
        if np.any(np.diff(nodes) <= 0.0):
            raise ValueError("profile nodes must be strictly increasing")
        if thetas[0] != 0.0 or thetas[-1] != math.pi:
            raise ValueError("profile endpoints must be pinned to 0 and pi")
        if not np.all(np.isfinite(thetas)):
            raise ValueError("profile angles must be finite")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "thetas", thetas)

    @property
    def n(self) -> int:
        return self.nodes.size - 1

    @property
    def annulus(self) -> AnnulusSpec:
        return AnnulusSpec(self.alpha0)

    def with_thetas(self, thetas) -> "Profile":
        return Profile(self.alpha0, self.nodes, thetas)


@dataclass(frozen=True)
class OptimizerResult:
    profile: Profile
    final_area: float
    iterations: int
    gradient_norm: float
    converged: bool
    max_deviation_from_closed_form: float
    field_area: float
    status: str
    max_area_change: float


def profile_nodes(A: AnnulusSpec, n: int) -> np.ndarray:
    u = np.linspace(-HALF_PI, HALF_PI, n + 1)
    nodes = A.to_alpha(u)
    nodes[0], nodes[-1] = -A.alpha0, A.alpha0
    return nodes


def _pinned(thetas) -> np.ndarray:
    thetas = np.array(thetas, dtype=float)
    thetas[0], thetas[-1] = 0.0, math.pi
    return thetas


def linear_profile(A: AnnulusSpec, n: int, nodes=None) -> Profile:
    nodes = profile_nodes(A, n) if nodes is None else np.asarray(nodes, dtype=float)
    return Profile(A.alpha0, nodes, _pinned(math.pi * (nodes + A.alpha0) / (2.0 * A.alpha0)))


def sampled_minimizer(A: AnnulusSpec, n: int, nodes=None) -> Profile:
    nodes = profile_nodes(A, n) if nodes is None else np.asarray(nodes, dtype=float)
    return Profile(A.alpha0, nodes, _pinned(minimizer_angle(nodes, A)))


def discrete_area(P: Profile) -> float:
    return kernels.discrete_area(P.nodes, P.thetas)


def area_gradient(P: Profile) -> np.ndarray:
    return kernels.discrete_gradient(P.nodes, P.thetas)


def first_integral_values(P: Profile) -> np.ndarray:
    """``cos^2(mid) s / sqrt(1 + cos^2(mid) s^2)`` on each segment."""
    return kernels.first_integral(P.nodes, P.thetas)


def first_integral_residual(P: Profile) -> float:
    """Largest deviation of the per-segment first integral from its median."""
    v = first_integral_values(P)
    return float(np.max(np.abs(v - np.median(v))))


def profile_field(P: Profile) -> GridField:
    return GridField(P.nodes, P.thetas, P.annulus, name="profile")


def export_profile(P: Profile, path) -> None:
    write_grid_csv(path, P.nodes, P.thetas)


def minimize_profile(
    A: AnnulusSpec,
    n: int = 200,
    max_iters: int = 2_000_000,
    grad_tol: float = 1e-8,
    step_rule: str = "adaptive",
    armijo: float = 1e-4,
    initial: Profile | None = None,
    strict: bool = False,
) -> OptimizerResult:
    """Gradient descent from the linear profile with Armijo backtracking.

    The result is returned even when the gradient tolerance is not met
    (``converged`` is then False); pass ``strict=True`` to raise
    :class:`NotConverged` instead.
    """
    if n < 8:
        raise ValueError("need at least 8 segments")
    if step_rule not in STEP_RULES:
        raise ValueError(f"step_rule must be one of {STEP_RULES}")
    start = initial if initial is not None else linear_profile(A, n)
    thetas, iters, gnorm, status, max_change = kernels.descend(
        start.nodes, start.thetas, int(max_iters), float(grad_tol), armijo, 1.0, step_rule == "adaptive"
    )
    P = start.with_thetas(_pinned(thetas))
    converged = status == kernels.CONVERGED
    status_name = {kernels.CONVERGED: "converged", kernels.MAX_ITERS: "max_iters", kernels.STALLED: "stalled"}[status]
    log.debug("descent finished: %s after %d iterations, |g| = %.3e", status_name, iters, gnorm)
    if strict and not converged:
        raise NotConverged(f"gradient norm {gnorm:.3e} > {grad_tol:.1e} ({status_name} after {iters} iterations)")
    deviation = float(np.max(np.abs(P.thetas[1:-1] - minimizer_angle(P.nodes[1:-1], A))))
    return OptimizerResult(
        profile=P,
        final_area=discrete_area(P),
        iterations=int(iters),
        gradient_norm=float(gnorm),
        converged=converged,
        max_deviation_from_closed_form=deviation,
        field_area=axisymmetric_area(profile_field(P), A),
        status=status_name,
        max_area_change=float(max_change),
    )
