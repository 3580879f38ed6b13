"""Pure numpy implementation of the discrete-profile kernels.

Mirrors ``_kernels.pyx`` function for function; used when the compiled
extension is unavailable or ``SASAKI_ANNULUS_PURE=1`` is set.

A profile is a pair of float64 arrays ``nodes`` (latitudes, strictly
increasing) and ``thetas`` of equal length. Segment ``i`` joins nodes ``i``
and ``i + 1``; its contribution to the area is
``2 pi dalpha_i sqrt(1 + cos^2(mid_i) s_i^2)`` with ``s_i`` the segment slope.
"""

import math

import numpy as np

TWO_PI = 2.0 * math.pi

CONVERGED = 0
MAX_ITERS = 1
STALLED = 2


def _segments(nodes, thetas):
    da = np.diff(nodes)
    c2 = np.cos(0.5 * (nodes[1:] + nodes[:-1])) ** 2
    s = np.diff(thetas) / da
    return da, c2, s


def discrete_area(nodes, thetas):
    da, c2, s = _segments(nodes, thetas)
    return TWO_PI * float(np.sum(da * np.sqrt(1.0 + c2 * s * s)))


def first_integral(nodes, thetas):
    """Per-segment ``cos^2 s / sqrt(1 + cos^2 s^2)``, constant at a stationary profile."""
    _, c2, s = _segments(nodes, thetas)
    return c2 * s / np.sqrt(1.0 + c2 * s * s)


def discrete_gradient(nodes, thetas):
    """Partial derivatives with respect to the interior thetas."""
    q = TWO_PI * first_integral(nodes, thetas)
    return q[:-1] - q[1:]


def area_change(nodes, old, new):
    """``discrete_area(new) - discrete_area(old)`` without cancellation."""
    da, c2, s0 = _segments(nodes, old)
    s1 = np.diff(new) / da
    # node-wise differences are exact; subtracting the slopes is not
    ds = np.diff(new - old) / da
    r0 = np.sqrt(1.0 + c2 * s0 * s0)
    r1 = np.sqrt(1.0 + c2 * s1 * s1)
    return TWO_PI * float(np.sum(da * c2 * ds * (s1 + s0) / (r0 + r1)))


def descend(nodes, thetas, max_iters, grad_tol, armijo=1e-4, step0=1.0, adaptive=True):
    """Gradient descent with backtracking (halving) line search.

    Endpoints stay fixed. With ``adaptive`` each search starts from twice the
    previous accepted step, otherwise from ``step0``. Returns
    ``(thetas, iterations, grad_norm, status, max_change)`` where
    ``max_change`` is the largest accepted area change (never positive).
    """
    t = np.array(thetas, dtype=float)
    nodes = np.asarray(nodes, dtype=float)
    step = step0
    max_change = -math.inf
    status = MAX_ITERS
    it = 0
    g = discrete_gradient(nodes, t)
    gn = float(np.sqrt(np.dot(g, g)))
    while it < max_iters:
        if gn <= grad_tol:
            status = CONVERGED
            break
        step = 2.0 * step if adaptive else step0
        while True:
            trial = t.copy()
            trial[1:-1] -= step * g
            change = area_change(nodes, t, trial)
            if change <= -armijo * step * gn * gn:
                break
            step *= 0.5
            if step < 1e-30:
                break
        if step < 1e-30:
            status = STALLED
            break
        t = trial
        max_change = max(max_change, change)
        it += 1
        g = discrete_gradient(nodes, t)
        gn = float(np.sqrt(np.dot(g, g)))
    else:
        if gn <= grad_tol:
            status = CONVERGED
    return t, it, gn, status, max_change
