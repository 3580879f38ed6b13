"""Invariant checks run by ``sasaki-annulus verify``.

Each check returns a :class:`CheckResult`. The seed only selects sample
points; every check is universally quantified, so the pass set does not
depend on it.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import closed_forms, fields, functional, optimizer
from .quadrature import DEFAULT_SCHEME
from .sphere import HALF_PI, PUNCTURED_SPHERE, TWO_PI, LatLon, frame_at, make_annulus

ANNULI = (math.pi / 6, math.pi / 4, math.pi / 3, 1.4)
INDEX_CLASSES = (-1, 0, 1, 3, 4, 5)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def _random_points(rng, count, alpha_max):
    alphas = rng.uniform(-alpha_max, alpha_max, count)
    betas = rng.uniform(0.0, TWO_PI, count)
    return [LatLon(float(a), float(b)) for a, b in zip(alphas, betas)]


def check_frame_orthonormal(rng):
    worst = 0.0
    for p in _random_points(rng, 200, HALF_PI - 1e-6):
        f = frame_at(p)
        vecs = (f.point, f.e1, f.e2)
        for i, v in enumerate(vecs):
            worst = max(worst, abs(np.dot(v, v) - 1.0))
            for w in vecs[i + 1:]:
                worst = max(worst, abs(np.dot(v, w)))
        worst = max(worst, float(np.max(np.abs(np.cross(f.e1, f.e2) - f.point))))
    return worst <= 1e-12, f"max defect {worst:.2e}"


def check_frame_periodic(rng):
    worst = 0.0
    for p in _random_points(rng, 100, HALF_PI - 1e-6):
        a, b = frame_at(p), frame_at(LatLon(p.alpha, p.beta + TWO_PI))
        worst = max(worst, *(float(np.max(np.abs(x - y))) for x, y in ((a.point, b.point), (a.e1, b.e1), (a.e2, b.e2))))
    return worst <= 1e-12, f"max difference {worst:.2e}"


def check_curvature_identity(rng):
    worst = 0.0
    A = make_annulus(math.pi / 3)
    candidates = [
        closed_forms.minimizer_field(A),
        closed_forms.linear_profile_field(A),
        closed_forms.perturbed_minimizer(A, 0.05),
    ] + [closed_forms.vk_field(k) for k in INDEX_CLASSES]
    for F in candidates:
        lim = F.domain.alpha0 * (1.0 - 1e-3)
        for p in _random_points(rng, 300, lim):
            theta = fields.eval_angle(F, p)
            d = fields.directional_derivatives(F, p)
            g, dl = fields.curvatures_from(theta, d.theta1, d.theta2, p.alpha)
            lhs = 1.0 + g * g + dl * dl
            rhs = 1.0 + (math.tan(p.alpha) + d.theta1) ** 2 + d.theta2 ** 2
            worst = max(worst, abs(lhs - rhs) / max(1.0, rhs))
    return worst <= 1e-10, f"max relative residual {worst:.2e}"


def check_winding_additivity(rng):
    bad = []
    for k in INDEX_CLASSES:
        F = closed_forms.vk_field(k)
        lat = float(rng.uniform(1.2, 1.5))
        n, s = fields.poincare_index(F, "N", lat), fields.poincare_index(F, "S", -lat)
        if (n, s) != (k, 2 - k) or n + s != 2:
            bad.append(f"k={k}: ({n}, {s})")
    return not bad, "indices (k, 2-k) for all k" if not bad else "; ".join(bad)


def check_grid_agreement(rng):
    worst_t = worst_d = 0.0
    # a 400-point cubic spline resolves the boundary peak of theta_u only up to alpha0 = pi/3
    for a0 in ANNULI[:3]:
        A = make_annulus(a0)
        F = closed_forms.minimizer_field(A)
        nodes = optimizer.profile_nodes(A, 399)
        G = fields.GridField(nodes, closed_forms.minimizer_angle(nodes, A), A)
        alphas = rng.uniform(-0.9 * a0, 0.9 * a0, 500)
        worst_t = max(worst_t, float(np.max(np.abs(G.angle(alphas) - F.angle(alphas)))))
        worst_d = max(worst_d, float(np.max(np.abs(G.partials(alphas)[0] - F.partials(alphas)[0]))))
    return max(worst_t, worst_d) <= 1e-6, f"theta {worst_t:.2e}, theta_2 {worst_d:.2e}"


def check_j_identity(rng):
    worst = 0.0
    for a0 in ANNULI:
        A = make_annulus(a0)
        alpha = rng.uniform(-a0, a0, 10_000)
        theta2 = rng.uniform(-50.0, 50.0, 10_000)
        H, I = functional.hi_split(alpha, A, theta2)
        J = 1.0 + np.cos(alpha) ** 2 * theta2 ** 2
        worst = max(worst, float(np.max(np.abs(H + I - J) / np.maximum(1.0, J))))
    return worst <= 1e-12, f"max relative residual {worst:.2e}"


def _hypothesis_fields(A, rng):
    """Fields meeting every boundary hypothesis: pinned ends, pi/2 on the equator."""
    yield closed_forms.minimizer_field(A)
    yield closed_forms.linear_profile_field(A)
    nodes = optimizer.profile_nodes(A, 40)
    u = A.to_u(nodes)
    for _ in range(4):
        base = closed_forms.minimizer_angle(nodes, A)
        # vanishes at u = -pi/2, 0, pi/2
        wiggle = rng.normal(0.0, 0.3, nodes.size) * np.sin(2.0 * u)
        thetas = base + wiggle
        thetas[0], thetas[-1] = 0.0, math.pi
        thetas[nodes.size // 2] = HALF_PI
        yield fields.GridField(nodes, thetas, A)


def check_bound_validity(rng):
    worst = math.inf
    for a0 in ANNULI:
        A = make_annulus(a0)
        for F in _hypothesis_fields(A, rng):
            if not fields.check_boundary_conditions(F, A, tol=1e-8).passed:
                return False, f"{F.name} fails the boundary hypotheses"
            r = functional.area(F, A)
            worst = min(worst, r.gap)
    return worst >= -1e-6, f"smallest gap {worst:.2e}"


def check_sharpness(rng):
    worst = 0.0
    for a0 in ANNULI:
        A = make_annulus(a0)
        value = functional.axisymmetric_area(closed_forms.minimizer_field(A), A)
        _, bound = functional.lower_bound(A, DEFAULT_SCHEME.with_(rule="adaptive-simpson"))
        worst = max(worst, abs(value - bound))
    return worst <= 1e-6, f"max |area - bound| {worst:.2e}"


def check_quadrature_convergence(rng):
    A = make_annulus(math.pi / 4)
    F = closed_forms.minimizer_field(A)
    values = [functional.axisymmetric_area(F, A, DEFAULT_SCHEME.with_(panels=p)) for p in (64, 128, 256, 512)]
    worst = max(abs(b - a) for a, b in zip(values, values[1:]))
    return worst <= 1e-9, f"max change on doubling {worst:.2e}"


def check_perturbation_optimality(rng):
    worst = math.inf
    for a0 in ANNULI:
        A = make_annulus(a0)
        base = functional.axisymmetric_area(closed_forms.minimizer_field(A), A)
        for eps in (1e-2, -1e-2, 1e-3, -1e-3):
            worst = min(worst, functional.axisymmetric_area(closed_forms.perturbed_minimizer(A, eps), A) - base)
    return worst >= 0.0, f"smallest increase {worst:.2e}"


def check_odd_symmetry(rng):
    worst = 0.0
    for a0 in ANNULI:
        A = make_annulus(a0)
        alpha = rng.uniform(-a0, a0, 1000)
        s = closed_forms.minimizer_angle(alpha, A) + closed_forms.minimizer_angle(-alpha, A)
        worst = max(worst, float(np.max(np.abs(s - math.pi))))
    return worst <= 1e-12, f"max |theta(a) + theta(-a) - pi| {worst:.2e}"


def check_first_integral(rng):
    worst = 0.0
    for a0 in ANNULI:
        A = make_annulus(a0)
        alpha = rng.uniform(-(a0 - 1e-6), a0 - 1e-6, 1000)
        t2 = closed_forms.minimizer_slope(alpha, A)
        c2 = np.cos(alpha) ** 2
        value = c2 * t2 / np.sqrt(1.0 + c2 * t2 * t2)
        worst = max(worst, float(np.max(np.abs(value - math.cos(a0)))))
    return worst <= 1e-10, f"max |first integral - cos(alpha0)| {worst:.2e}"


def check_equality_condition(rng):
    worst = 0.0
    for a0 in ANNULI:
        A = make_annulus(a0)
        alpha = np.concatenate([rng.uniform(-(a0 - 1e-6), a0 - 1e-6, 1000), [a0 - 1e-6, -(a0 - 1e-6), 0.0]])
        _, I = functional.hi_split(alpha, A, closed_forms.minimizer_slope(alpha, A))
        worst = max(worst, float(np.max(I)))
    return worst <= 1e-10, f"max I along the minimizer {worst:.2e}"


def check_vk_ellipse(rng):
    worst = 0.0
    for k in (1, 3, 4):
        r = functional.area(closed_forms.vk_field(k), PUNCTURED_SPHERE)
        worst = max(worst, abs(r.area - math.pi * closed_forms.ellipse_perimeter(k)))
    return worst <= 1e-6, f"max |area(V_k) - pi L| {worst:.2e}"


def check_bcgn_refines_bcj(rng):
    rows = [closed_forms.reference_bounds(k) for k in (1, 3, 4, 5, -1)]
    ok = all(bcgn >= bcj - 1e-12 for bcj, bcgn in rows)
    return ok, "bcgn >= bcj for k in {1, 3, 4, 5, -1}"


def check_descent(rng):
    A = make_annulus(math.pi / 4)
    res = optimizer.minimize_profile(A, n=32, max_iters=20_000, grad_tol=1e-9)
    ok = res.max_area_change <= 0.0 and res.final_area <= optimizer.discrete_area(optimizer.linear_profile(A, 32))
    return ok, f"largest accepted change {res.max_area_change:.2e}"


def check_gradient(rng):
    worst = 0.0
    A = make_annulus(math.pi / 4)
    h = 1e-7
    for _ in range(20):
        n = int(rng.integers(8, 40))
        P = optimizer.linear_profile(A, n)
        thetas = P.thetas.copy()
        thetas[1:-1] += rng.normal(0.0, 0.3, n - 1)
        P = P.with_thetas(thetas)
        g = optimizer.area_gradient(P)
        for j in range(1, n):
            up, dn = thetas.copy(), thetas.copy()
            up[j] += h
            dn[j] -= h
            fd = (optimizer.discrete_area(P.with_thetas(up)) - optimizer.discrete_area(P.with_thetas(dn))) / (2 * h)
            worst = max(worst, abs(fd - g[j - 1]))
    return worst <= 1e-6, f"max |analytic - FD| {worst:.2e}"


def check_oracle_convergence(rng):
    A = make_annulus(math.pi / 4)
    devs = []
    for n in (50, 100, 200, 400):
        res = optimizer.minimize_profile(A, n=n, grad_tol=1e-8)
        devs.append(res.max_deviation_from_closed_form)
    ok = all(b < a for a, b in zip(devs, devs[1:]))
    return ok, "deviations " + ", ".join(f"{d:.2e}" for d in devs)


def discretization_orders(alpha0=math.pi / 4, sizes=(50, 100, 200, 400, 800)):
    """Observed convergence orders of the sampled minimizer's discrete area."""
    A = make_annulus(alpha0)
    errs = [abs(optimizer.discrete_area(optimizer.sampled_minimizer(A, n)) - 2 * math.pi ** 2) for n in sizes]
    return [math.log2(a / b) for a, b in zip(errs, errs[1:])], errs


def check_discretization_order(rng):
    orders, _ = discretization_orders()
    return min(orders) >= 1.0, "observed orders " + ", ".join(f"{o:.2f}" for o in orders)


CHECKS = {
    "frame-orthonormal": check_frame_orthonormal,
    "frame-periodic": check_frame_periodic,
    "curvature-identity": check_curvature_identity,
    "winding-additivity": check_winding_additivity,
    "grid-closed-form-agreement": check_grid_agreement,
    "j-identity": check_j_identity,
    "bound-validity": check_bound_validity,
    "sharpness": check_sharpness,
    "quadrature-convergence": check_quadrature_convergence,
    "perturbation-optimality": check_perturbation_optimality,
    "minimizer-odd-symmetry": check_odd_symmetry,
    "first-integral": check_first_integral,
    "equality-condition": check_equality_condition,
    "vk-attains-ellipse-bound": check_vk_ellipse,
    "bcgn-refines-bcj": check_bcgn_refines_bcj,
    "descent-monotone": check_descent,
    "gradient-consistency": check_gradient,
    "oracle-convergence": check_oracle_convergence,
    "discretization-order": check_discretization_order,
}


def run_checks(seed: int = 42, names=None):
    results = []
    for name, fn in CHECKS.items():
        if names is not None and name not in names:
            continue
        rng = np.random.default_rng(seed)
        t0 = time.perf_counter()
        try:
            passed, detail = fn(rng)
        except Exception as exc:  # a crash is a failed check, reported by name
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - t0))
    return results
