"""One-dimensional quadrature rules used by the area functional.

Two independent rules are provided: composite Gauss-Legendre (the default)
and a breadth-first adaptive Simpson rule (the cross-check). Integrands are
vectorised callables of a 1-D array of abscissae.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import QuadratureFailure, SingularIntegrand

GAUSS_LEGENDRE = "gauss-legendre"
ADAPTIVE_SIMPSON = "adaptive-simpson"


@dataclass(frozen=True)
class QuadratureScheme:
    """Rule and parameters for a 1-D integral.

    ``endpoint_substitution`` integrates annulus integrals in ``u`` with
    ``sin(alpha) = sin(alpha0) sin(u)``, which removes the inverse square-root
    endpoint behaviour of the minimizer's integrand.
    """

    rule: str = GAUSS_LEGENDRE
    order: int = 16
    panels: int = 64
    tol: float = 1e-10
    endpoint_substitution: bool = True
    max_evals: int = 2_000_000

    def __post_init__(self):
        if self.rule not in (GAUSS_LEGENDRE, ADAPTIVE_SIMPSON):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")
        if self.order < 2 or self.panels < 1 or not self.tol > 0.0:
            raise ValueError("need order >= 2, panels >= 1 and tol > 0")

    def with_(self, **changes) -> "QuadratureScheme":
        return replace(self, **changes)


DEFAULT_SCHEME = QuadratureScheme()
ORACLE_SCHEME = QuadratureScheme(rule=ADAPTIVE_SIMPSON, tol=1e-10)


@lru_cache(maxsize=32)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _finite(values: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise SingularIntegrand("integrand is not finite at a quadrature node")
    return values


def _edges(a, b, panels, breakpoints):
    if breakpoints is None:
        return np.linspace(a, b, panels + 1)
    # panels aligned with the breakpoints, each gap split evenly
    knots = np.unique(np.concatenate([[a, b], np.asarray(breakpoints, dtype=float)]))
    knots = knots[(knots >= a) & (knots <= b)]
    per_gap = max(1, -(-panels // (knots.size - 1)))
    frac = np.arange(per_gap) / per_gap
    inner = knots[:-1, None] + np.diff(knots)[:, None] * frac[None, :]
    return np.concatenate([inner.ravel(), [b]])


def gauss_legendre(f, a: float, b: float, order: int = 16, panels: int = 64, breakpoints=None) -> float:
    """Composite Gauss-Legendre rule; panels respect ``breakpoints`` if given."""
    x, w = _leggauss(order)
    edges = _edges(a, b, panels, breakpoints)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    values = _finite(np.asarray(f(nodes.ravel()), dtype=float)).reshape(nodes.shape)
    # per-panel sums, then numpy's pairwise reduction in panel order
    return float(np.sum((values @ w) * half))


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10, max_evals: int = 2_000_000, min_intervals: int = 16,
                     breakpoints=None):
    """Adaptive Simpson integral and its error estimate.

    All intervals of one refinement level are evaluated in a single vectorised
    call; accepted contributions are summed in left-to-right order so the
    result does not depend on evaluation batching.
    """
    edges = _edges(a, b, min_intervals, breakpoints)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    vals = _finite(np.asarray(f(np.concatenate([lo, mid, hi])), dtype=float))
    n = lo.size
    flo, fmid, fhi = vals[:n], vals[n:2 * n], vals[2 * n:]
    whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
    tols = np.full(n, tol / n)
    evals = 3 * n

    accepted_pos, accepted_val, accepted_err = [], [], []
    while lo.size:
        lq = 0.5 * (lo + mid)
        rq = 0.5 * (mid + hi)
        q = _finite(np.asarray(f(np.concatenate([lq, rq])), dtype=float))
        evals += q.size
        flq, frq = q[: lo.size], q[lo.size:]
        left = (mid - lo) / 6.0 * (flo + 4.0 * flq + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frq + fhi)
        diff = left + right - whole
        done = (np.abs(diff) <= 15.0 * tols) | ((hi - lo) < 1e-14 * max(1.0, abs(b - a)))
        accepted_pos.append(lo[done])
        accepted_val.append((left + right + diff / 15.0)[done])
        accepted_err.append(np.abs(diff[done]) / 15.0)
        if evals > max_evals:
            raise QuadratureFailure(f"adaptive Simpson exceeded {max_evals} integrand evaluations")
        keep = ~done
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        flo, fmid, fhi = flo[keep], fmid[keep], fhi[keep]
        flq, frq, left, right, tols = flq[keep], frq[keep], left[keep], right[keep], tols[keep]
        # split each remaining interval into its two halves
        lo, mid, hi, flo, fmid, fhi, whole = (
            np.concatenate([lo, mid]),
            np.concatenate([0.5 * (lo + mid), 0.5 * (mid + hi)]),
            np.concatenate([mid, hi]),
            np.concatenate([flo, fmid]),
            np.concatenate([flq, frq]),
            np.concatenate([fmid, fhi]),
            np.concatenate([left, right]),
        )
        tols = np.concatenate([tols, tols]) * 0.5

    pos = np.concatenate(accepted_pos)
    order = np.argsort(pos, kind="stable")
    value = float(np.sum(np.concatenate(accepted_val)[order]))
    error = float(np.sum(np.concatenate(accepted_err)))
    return value, error


def integrate(f, a: float, b: float, scheme: QuadratureScheme = DEFAULT_SCHEME, breakpoints=None) -> float:
    if scheme.rule == GAUSS_LEGENDRE:
        return gauss_legendre(f, a, b, scheme.order, scheme.panels, breakpoints)
    value, _ = adaptive_simpson(f, a, b, scheme.tol, scheme.max_evals, breakpoints=breakpoints)
    return value
