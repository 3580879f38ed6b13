"""Latitude/longitude coordinates, the orthonormal frame and annular regions
on the unit 2-sphere.

Latitude ``alpha`` lies in (-pi/2, pi/2) and longitude ``beta`` in (0, 2pi].
``e1`` is the unit tangent to the parallel (increasing beta) and ``e2`` the
unit tangent to the meridian (increasing alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAnnulus, OutOfDomain

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


def normalize_longitude(beta: float) -> float:
    """Map any real longitude into (0, 2pi]."""
    b = math.fmod(beta, TWO_PI)
    if b <= 0.0:
        b += TWO_PI
    return b


@dataclass(frozen=True)
class LatLon:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (-HALF_PI < self.alpha < HALF_PI) or not math.isfinite(self.alpha):
            raise OutOfDomain(f"latitude {self.alpha!r} outside (-pi/2, pi/2)")
        if not math.isfinite(self.beta):
            raise OutOfDomain(f"longitude {self.beta!r} is not finite")
        object.__setattr__(self, "beta", normalize_longitude(self.beta))


@dataclass(frozen=True)
class AnnulusSpec:
    """The band of the sphere between latitudes -alpha0 and alpha0."""

    alpha0: float

    def __post_init__(self):
        if not (0.0 < self.alpha0 < HALF_PI):
            raise DegenerateAnnulus("alpha0 must lie in (0, pi/2)")

    def contains(self, alpha, slack: float = 0.0):
        return np.abs(alpha) <= self.alpha0 + slack

    def to_alpha(self, u):
        """Latitude for the substituted coordinate u, sin(alpha) = sin(alpha0) sin(u)."""
        return np.arcsin(math.sin(self.alpha0) * np.sin(u))

    def to_u(self, alpha):
        return np.arcsin(np.clip(np.sin(alpha) / math.sin(self.alpha0), -1.0, 1.0))

    def cos_alpha(self, u):
        """cos(alpha(u)) as sqrt(cos^2 u + cos^2(alpha0) sin^2 u), free of cancellation."""
        return np.hypot(np.cos(u), math.cos(self.alpha0) * np.sin(u))

    def dalpha_du(self, u):
        return math.sin(self.alpha0) * np.cos(u) / self.cos_alpha(u)


@dataclass(frozen=True)
class PuncturedSphere:
    """The sphere with both poles removed."""

    alpha0: float = HALF_PI

    def contains(self, alpha, slack: float = 0.0):
        return np.abs(alpha) < HALF_PI


PUNCTURED_SPHERE = PuncturedSphere()


@dataclass(frozen=True)
class Frame3:
    point: np.ndarray
    e1: np.ndarray
    e2: np.ndarray


def make_annulus(alpha0: float) -> AnnulusSpec:
    return AnnulusSpec(float(alpha0))


def frame_at(p: LatLon) -> Frame3:
    """Ambient position and frame vectors at a point of the sphere."""
    ca, sa = math.cos(p.alpha), math.sin(p.alpha)
    cb, sb = math.cos(p.beta), math.sin(p.beta)
    point = np.array([ca * cb, ca * sb, sa])
    # d/dbeta has length cos(alpha); d/dalpha is already unit length
    e1 = np.array([-sb, cb, 0.0])
    e2 = np.array([-sa * cb, -sa * sb, ca])
    return Frame3(point, e1, e2)
