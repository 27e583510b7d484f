"""Spiral point sets on the plane, the hyperbolic plane, and the sphere.

Site s sits at azimuth 2*pi*lam*s and at a radial position chosen so the
area enclosed per site is constant.  On the plane this is the square-root
spiral rho = a*sqrt(s).  On the curved surfaces the curvature radius is tied
to the lattice scale as R = 1/a, which makes the enclosed-area-per-site
exactly pi in the generated units, so areas and distances from different
geometries are directly comparable without further rescaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import HYPERBOLIC, PLANE, SPHERE, IntrinsicPoint, ChartPoint, SurfaceSpec
from .numerics import DIVERGENCE

__all__ = [
    "PhylloPattern",
    "generate_plane",
    "generate_hyperbolic",
    "generate_sphere",
    "generate",
    "stereographic_chart",
    "normalization_scale",
]

INDEXINGS = ("integer", "half-integer")


def _effective_index(n: int, indexing: str) -> np.ndarray:
    if indexing not in INDEXINGS:
        raise ValueError(f"indexing must be one of {INDEXINGS}, got {indexing!r}")
    s = np.arange(n, dtype=float)
    return s + 0.5 if indexing == "half-integer" else s


@dataclass(frozen=True, eq=False)
class PhylloPattern:
    """A generated point set, stored as parallel per-site arrays.

    s runs 0..n-1 in generation order.  rho is the geodesic distance from
    the pattern center (the s=0 pole on the sphere), theta the unreduced
    azimuth, r the chart radius.  phi (latitude) and xyz (embedding) are
    populated for spheres only.
    """

    surface: SurfaceSpec
    n: int
    indexing: str
    s: np.ndarray
    rho: np.ndarray
    theta: np.ndarray
    r: np.ndarray
    phi: np.ndarray | None = None
    xyz: np.ndarray | None = None
    _chart_xy: np.ndarray | None = field(default=None, repr=False)

    @property
    def chart_xy(self) -> np.ndarray:
        """(n, 2) chart coordinates; computed once and cached."""
        if self._chart_xy is None:
            xy = np.column_stack((self.r * np.cos(self.theta), self.r * np.sin(self.theta)))
            object.__setattr__(self, "_chart_xy", xy)
        return self._chart_xy

    def site(self, s: int) -> tuple[int, IntrinsicPoint, ChartPoint]:
        """Single-site view as (index, intrinsic, chart)."""
        phi = float(self.phi[s]) if self.phi is not None else None
        return (
            int(self.s[s]),
            IntrinsicPoint(float(self.rho[s]), float(self.theta[s]), phi),
            ChartPoint(float(self.r[s]), float(self.theta[s])),
        )


def generate_plane(
    n: int,
    a: float = 1.0,
    lam: float = DIVERGENCE,
    indexing: str = "integer",
) -> PhylloPattern:
    """Square-root spiral on the plane: rho = a*sqrt(s), theta = 2*pi*lam*s."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    surface = SurfaceSpec(PLANE, None, a, lam)
    s_eff = _effective_index(n, indexing)
    rho = a * np.sqrt(s_eff)
    theta = (2.0 * math.pi * lam) * s_eff
    return PhylloPattern(surface, n, indexing, np.arange(n), rho, theta, rho.copy())


def generate_hyperbolic(
    n: int,
    a: float,
    lam: float = DIVERGENCE,
    indexing: str = "integer",
) -> PhylloPattern:
    """Equal-area spiral on the hyperbolic plane of curvature -a^2.

    With R = 1/a the geodesic radius of site s is R*acosh(a^2*s/2 + 1), so
    the disc out to site s encloses area exactly pi*s; the disc-chart radius
    is tanh(rho/(2R)).  Small s reduces to the flat spiral a*sqrt(s) in
    curvature units.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 < a <= 1:
        raise ValueError(f"need 0 < a <= 1, got {a}")
    R = 1.0 / a
    surface = SurfaceSpec(HYPERBOLIC, R, a, lam)
    s_eff = _effective_index(n, indexing)
    rho_hat = np.arccosh(a * a * s_eff / 2.0 + 1.0)  # rho/R
    theta = (2.0 * math.pi * lam) * s_eff
    return PhylloPattern(surface, n, indexing, np.arange(n), R * rho_hat, theta, np.tanh(rho_hat / 2.0))


def generate_sphere(
    n: int,
    lam: float = DIVERGENCE,
    indexing: str = "integer",
) -> PhylloPattern:
    """Equal-area spiral on the sphere of radius R = sqrt(n)/2.

    Sites are uniform in the axial coordinate (the cylinder-to-sphere
    equal-area map): with n = 2*nu + 1 and s' = s - nu, site s sits at
    latitude arcsin(s'/nu), so z = R*s'/nu exactly and both poles are
    occupied.  The R choice makes the area per site 4*pi*R^2/n = pi.
    Half-integer indexing instead spreads z uniformly over open midpoints,
    leaving both poles empty (and works for even n).
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if indexing == "integer" and n % 2 == 0:
        raise ValueError(f"integer indexing needs odd n, got {n}")
    R = math.sqrt(n) / 2.0
    surface = SurfaceSpec(SPHERE, R, 2.0 / math.sqrt(n), lam)
    s = np.arange(n)
    if indexing == "integer":
        nu = (n - 1) // 2
        z_hat = (s - nu) / nu  # z/R, exactly s'/nu
    else:
        z_hat = (2.0 * _effective_index(n, indexing)) / n - 1.0
    s_eff = _effective_index(n, indexing)
    theta = (2.0 * math.pi * lam) * s_eff
    phi = np.arcsin(z_hat)
    colat = np.arccos(np.clip(-z_hat, -1.0, 1.0))  # from the s=0 pole
    sin_colat = np.sqrt(np.maximum(0.0, 1.0 - z_hat * z_hat))
    xyz = np.column_stack((R * sin_colat * np.cos(theta), R * sin_colat * np.sin(theta), R * z_hat))
    r = np.tan(colat / 2.0)
    return PhylloPattern(surface, n, indexing, s, R * colat, theta, r, phi=phi, xyz=xyz)


def generate(
    kind: str,
    n: int,
    a: float = 1.0,
    lam: float = DIVERGENCE,
    indexing: str = "integer",
) -> PhylloPattern:
    """Dispatch to the per-geometry constructor (a is ignored on the sphere)."""
    if kind == PLANE:
        return generate_plane(n, a, lam, indexing)
    if kind == HYPERBOLIC:
        return generate_hyperbolic(n, a, lam, indexing)
    if kind == SPHERE:
        return generate_sphere(n, lam, indexing)
    raise ValueError(f"unknown surface kind {kind!r}")


def stereographic_chart(pattern: PhylloPattern) -> np.ndarray:
    """Closed-form chart radii tan(acos(1 - a^2 s/2)/2) with a^2 = 4/n.

    This is the equal-area radial law written directly in the chart: site s
    has a^2*s/2 = 2s/n of the total solid-angle fraction behind it.  It
    agrees with the true projection of the lattice latitudes to O(1/n) and
    diverges as s approaches n (the projection pole).
    """
    if pattern.surface.kind != SPHERE:
        raise ValueError("stereographic chart radii are defined for sphere patterns")
    s_eff = _effective_index(pattern.n, pattern.indexing)
    frac = 2.0 * s_eff / pattern.n  # a^2 s / 2
    if np.any(frac >= 2.0):
        raise ValueError("site at or beyond the projection pole has no chart radius")
    return np.tan(np.arccos(1.0 - frac) / 2.0)


def normalization_scale(surface: SurfaceSpec) -> float:
    """Length divisor that brings the mean cell area to pi.

    Generated curved patterns bake R = 1/a, so the divisor is 1 there; plane
    patterns scale linearly with a.
    """
    if surface.kind == PLANE:
        return surface.a
    return surface.a * surface.R
