"""Grain and grain-boundary structure of tessellated spiral patterns.

A grain boundary is a thin annulus of heptagon/pentagon dipoles (plus the
hexagons wedged between dipole pairs) separating two grains of hexagonal
cells.  Detection is adjacency-based: defect cells are linked through the
Delaunay graph, grouped, and the groups read off as rings.  A ring whose
pentagon count is the Fibonacci number f_{u-1} gets rank u; the full census
of a complete ring is then (f_{u-1}, f_{u-2}, f_{u-1}) over f_{u+1}
consecutive sites, its dipoles step +f_u in the spiral index, and the
singleton/pair pattern of its dipoles inflates from one ring to the next.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass

import numpy as np

from .generator import PhylloPattern, normalization_scale
from .geometry import HYPERBOLIC, PLANE, SPHERE, SurfaceSpec, circle_circumference
from .numerics import LSWord, fibonacci
from .tessellation import Tessellation, classify

__all__ = [
    "CORE_DEPTH",
    "EDGE_MARGIN_CELLS",
    "GrainBoundary",
    "DipoleAngles",
    "DistanceSeries",
    "AreaSeries",
    "site_depth",
    "detect_grain_boundaries",
    "verify_inflation",
    "dipole_angles",
    "boundary_perimeter_prediction",
    "boundary_radius",
    "sphere_thresholds",
    "boundary_polar_angle",
    "grain_bounds_estimate",
    "analytic_distance",
    "distance_series",
    "area_series",
    "DISTANCE_MIN",
    "DISTANCE_MAX",
]

#: sites closer than this (in index steps) to a pattern pole form the
#: disordered core and are left out of defect analysis
CORE_DEPTH = 10

#: cells within this many mean cell widths of the pattern edge are dropped
#: from area statistics (the tessellation distorts about two cells deep)
EDGE_MARGIN_CELLS = 2.0

#: defect detection needs a wider margin: edge distortion can squeeze an
#: interior cell to five sides without flagging it as a boundary cell
DEFECT_EDGE_MARGIN_CELLS = 3.0

#: confinement bounds for neighbor distances at mean cell area pi:
#: sqrt(2*pi/sqrt(5)) (tightest parastichy) up to sqrt(2*pi) (square diagonal)
DISTANCE_MIN = math.sqrt(2.0 * math.pi / math.sqrt(5.0))
DISTANCE_MAX = math.sqrt(2.0 * math.pi)


def site_depth(pattern: PhylloPattern, s) -> np.ndarray:
    """Index distance from the pattern center; spheres count from both poles."""
    s = np.asarray(s)
    if pattern.surface.kind == SPHERE:
        return np.minimum(s, pattern.n - 1 - s)
    return s


# ---------------------------------------------------------------------------
# grain boundaries
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class GrainBoundary:
    """One detected defect ring."""

    rank: int | None  # u with pentagon count f_{u-1}; None if anomalous
    members: list[int]  # all member sites, ordered by azimuth
    counts: tuple[int, int, int]  # (heptagons, hexagons, pentagons)
    dipoles: list[tuple[int, int]]  # (heptagon site, pentagon site)
    word: LSWord | None  # singleton/pair pattern of the dipoles
    s_range: tuple[int, int]
    mean_radius: float  # mean geodesic distance from the ring's own pole
    perimeter: float  # circumference of the circle at mean_radius
    complete: bool
    anomalous: bool
    pole_side: int  # 0 = ring around the s=0 pole; 1 = around s=n-1 (sphere)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)


def _rank_from_pentagon_count(count: int) -> int | None:
    """Rank u with f_{u-1} = count, allowing one unit of slack."""
    if count < 1:
        return None
    best = None
    u = 2
    while u <= 89 and fibonacci(u) <= count + 1:
        d = abs(fibonacci(u) - count)
        if best is None or d < best[0]:
            best = (d, u)
        u += 1
    if best is not None and best[0] <= 1:
        return best[1] + 1
    return None


def _ring_word(order: list[int], heptagons: set[int]) -> LSWord | None:
    """Singleton/pair word from the azimuthal member order.

    Consecutive heptagons two member-steps apart share no hexagon: their
    dipoles form a pair.  Three steps apart means a hexagon sits between
    them.  Runs of pair-linked dipoles of size two map to L, singletons
    to S; any larger run means the ring is not in the expected form.
    """
    pos = [k for k, s in enumerate(order) if s in heptagons]
    if len(pos) < 2:
        return None
    m = len(order)
    gaps = [(pos[(k + 1) % len(pos)] - pos[k]) % m for k in range(len(pos))]
    if any(g not in (2, 3) for g in gaps):
        return None
    # start at a heptagon preceded by a hexagon so groups do not wrap
    try:
        start = next(k for k in range(len(pos)) if gaps[k - 1] == 3)
    except StopIteration:
        return None
    symbols = []
    size = 1
    for k in range(len(pos)):
        g = gaps[(start + k) % len(pos)]
        if g == 2:
            size += 1
        else:
            if size > 2:
                return None
            symbols.append("L" if size == 2 else "S")
            size = 1
    return LSWord(tuple(symbols), cyclic=True)


def _extract_dipoles(
    tess: Tessellation, rank: int | None, heptagons: list[int], pentagons: list[int]
) -> list[tuple[int, int]]:
    pent_set = set(pentagons)
    pairs: list[tuple[int, int]] = []
    unpaired: list[int] = []
    step = fibonacci(rank) if rank is not None and rank <= 90 else None
    for h in heptagons:
        if step is not None and h + step in pent_set:
            pairs.append((h, h + step))
            pent_set.discard(h + step)
        elif step is not None and h - step in pent_set:  # far-pole sphere rings
            pairs.append((h, h - step))
            pent_set.discard(h - step)
        else:
            unpaired.append(h)
    for h in unpaired:  # fall back on direct cell adjacency
        for link in tess.adjacency[h]:
            if link.t in pent_set:
                pairs.append((h, link.t))
                pent_set.discard(link.t)
                break
    return sorted(pairs)


def detect_grain_boundaries(tess: Tessellation) -> list[GrainBoundary]:
    """Group interior defect cells into rings (sorted inside outward).

    Defects (pentagons and heptagons outside the core and away from the
    pattern edge) are linked through Delaunay edges, but only an inward
    heptagon to an outward pentagon: like-type contacts are ignored because
    adjacent rings touch heptagon-to-heptagon where they meet.  Components
    whose spiral-index bands overlap are then merged (a ring is a contiguous
    run of sites) and the hexagons inside the final band are claimed as
    ring members.
    """
    pattern = tess.pattern
    n = pattern.n
    labels = classify(tess)
    depth = site_depth(pattern, np.arange(n))
    scale = normalization_scale(pattern.surface)
    rho_norm = pattern.rho / scale
    if pattern.surface.kind == SPHERE:
        rho_limit = np.inf  # closed surface, no edge
    else:
        rho_limit = rho_norm.max() - DEFECT_EDGE_MARGIN_CELLS * math.sqrt(math.pi)
    eligible = [
        s
        for s in range(n)
        if depth[s] >= CORE_DEPTH
        and rho_norm[s] <= rho_limit
        and labels[s] in ("pentagon", "heptagon")
    ]
    if not eligible:
        return []
    eligible_set = set(eligible)
    uf = _UnionFind(eligible)
    for s in eligible:
        for link in tess.adjacency[s]:
            t = link.t
            if t not in eligible_set or t < s or labels[s] == labels[t]:
                continue
            hept, pent = (s, t) if labels[s] == "heptagon" else (t, s)
            if depth[hept] < depth[pent]:
                uf.union(s, t)

    groups: dict[int, list[int]] = {}
    for s in eligible:
        groups.setdefault(uf.find(s), []).append(s)

    # merge groups whose index bands overlap (rings are contiguous in s)
    bands = [(min(g), max(g), key) for key, g in groups.items()]
    bands.sort()
    merged: list[list[int]] = []
    cur_lo, cur_hi, cur = bands[0][0], bands[0][1], list(groups[bands[0][2]])
    for lo, hi, key in bands[1:]:
        if lo <= cur_hi:
            cur.extend(groups[key])
            cur_hi = max(cur_hi, hi)
        else:
            merged.append(cur)
            cur_lo, cur_hi, cur = lo, hi, list(groups[key])
    merged.append(cur)

    nu = (n - 1) // 2
    out: list[GrainBoundary] = []
    for group in merged:
        lo, hi = min(group), max(group)
        members = list(group) + [
            s for s in range(lo, hi + 1) if labels[s] == "hexagon"
        ]
        theta = np.mod(pattern.theta[members], 2.0 * math.pi)
        order = [members[k] for k in np.argsort(theta, kind="stable")]
        hept = sorted(s for s in group if labels[s] == "heptagon")
        pent = sorted(s for s in group if labels[s] == "pentagon")
        counts = (len(hept), len(members) - len(group), len(pent))
        rank = _rank_from_pentagon_count(counts[2])
        anomalous = rank is None
        complete = not anomalous and counts == (
            fibonacci(rank - 1),
            fibonacci(rank - 2),
            fibonacci(rank - 1),
        )
        pole_side = 1 if (pattern.surface.kind == SPHERE and (lo + hi) / 2 > nu) else 0
        rho = pattern.rho[order] / scale
        if pole_side == 1:
            rho = math.pi * pattern.surface.R / scale - rho  # from the far pole
        mean_radius = float(rho.mean())
        perimeter = float(
            circle_circumference(pattern.surface, mean_radius * scale) / scale
        )
        out.append(
            GrainBoundary(
                rank=rank,
                members=order,
                counts=counts,
                dipoles=_extract_dipoles(tess, rank, hept, pent),
                word=_ring_word(order, set(hept)),
                s_range=(lo, hi),
                mean_radius=mean_radius,
                perimeter=perimeter,
                complete=complete,
                anomalous=anomalous,
                pole_side=pole_side,
            )
        )
    out.sort(key=lambda b: (b.pole_side, b.s_range[0] if b.pole_side == 0 else -b.s_range[1]))
    return out


def verify_inflation(boundaries: list[GrainBoundary]) -> list[tuple[int, int, bool]]:
    """Check word(u+1) = inflate(word(u)) for consecutive complete rings.

    Rings are chained inside outward around each pole separately.  Returns
    one (rank, next rank, matches) triple per consecutive pair.
    """
    from .numerics import inflate, words_equal

    report: list[tuple[int, int, bool]] = []
    for side in (0, 1):
        chain = [
            b
            for b in boundaries
            if b.pole_side == side and b.complete and b.word is not None
        ]
        chain.sort(key=lambda b: b.rank)
        for a, b in zip(chain, chain[1:]):
            expected = inflate(a.word, times=b.rank - a.rank)
            report.append((a.rank, b.rank, words_equal(expected, b.word)))
    return report


# ---------------------------------------------------------------------------
# dipole orientation
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class DipoleAngles:
    """Angles between each dipole axis and the local outward meridian."""

    signed: np.ndarray  # one angle per dipole, in (-pi, pi]

    @property
    def mean_abs(self) -> float:
        return float(np.mean(np.abs(self.signed)))

    @property
    def mean_signed(self) -> float:
        return float(np.mean(self.signed))


def dipole_angles(boundary: GrainBoundary, tess: Tessellation) -> DipoleAngles:
    """Per-dipole angle of the heptagon->pentagon axis to the radial direction.

    Both charts are conformal, so the metric angle can be read directly off
    chart vectors.  Meridians map to chart rays through the origin; "outward"
    (away from the ring's own pole) is +radial for rings around the chart
    center but -radial for the far-pole rings of a sphere, whose own pole
    sits at chart infinity.
    """
    xy = tess.pattern.chart_xy
    sign = -1.0 if boundary.pole_side == 1 else 1.0
    angles = []
    for hept, pent in boundary.dipoles:
        mid = (xy[hept] + xy[pent]) / 2.0
        radial = sign * mid / np.linalg.norm(mid)
        v = xy[pent] - xy[hept]
        angles.append(math.atan2(radial[0] * v[1] - radial[1] * v[0], float(v @ radial)))
    return DipoleAngles(np.array(angles))


# ---------------------------------------------------------------------------
# closed-form ring geometry
# ---------------------------------------------------------------------------

def boundary_perimeter_prediction(u: int) -> float:
    """Length of the ring carrying f_u dipoles, at mean cell area pi.

    The ring advances one lattice row per dipole along the (f_{u-1}, f_u)
    direction of the underlying square lattice of side sqrt(pi), giving
    sqrt(pi * (f_{u-1}^2 + f_u^2)) = sqrt(pi * f_{2u+1}) once around.
    """
    return math.sqrt(fibonacci(2 * u + 1) * math.pi)


def boundary_radius(surface: SurfaceSpec, u: int) -> float:
    """Geodesic radius at which the rank-u dipole ring sits on each surface."""
    P = boundary_perimeter_prediction(u)
    if surface.kind == PLANE:
        return P / (2.0 * math.pi)
    R = surface.R
    x = P / (2.0 * math.pi * R)
    if surface.kind == HYPERBOLIC:
        return R * math.asinh(x)
    if x > 1.0:
        raise ValueError(
            f"ring of rank {u} needs perimeter {P:.2f} > equator {2 * math.pi * R:.2f}"
        )
    return R * math.asin(x)


def sphere_thresholds(u_max: int) -> list[int]:
    """Smallest point counts at which each dipole ring fits on the sphere.

    Ring u fits once its perimeter sqrt(pi f_{2u+1}) is at most the equator
    length sqrt(pi n), i.e. n >= f_{2u+1}/pi; the threshold is the nearest
    integer.  High-precision pi keeps the rounding exact at large rank.
    """
    if not 1 <= u_max <= 40:
        raise ValueError(f"need 1 <= u_max <= 40, got {u_max}")
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        pi = decimal.Decimal(
            "3.14159265358979323846264338327950288419716939937510582097494"
        )
        return [
            int(
                (decimal.Decimal(fibonacci(2 * u + 1)) / pi).quantize(
                    decimal.Decimal(1), rounding=decimal.ROUND_HALF_EVEN
                )
            )
            for u in range(1, u_max + 1)
        ]


def boundary_polar_angle(u: int, nu: int) -> float:
    """Colatitude of the rank-u dipole ring on the sphere with n = 2*nu + 1."""
    arg = fibonacci(2 * u + 1) / ((2 * nu + 1) * math.pi)
    if arg > 1.0:
        raise ValueError(f"ring of rank {u} does not fit on a sphere of {2 * nu + 1} sites")
    return math.asin(math.sqrt(arg))


def grain_bounds_estimate(u: int, nu: int) -> tuple[int, int]:
    """Spiral-index bounds of the rank-u ring's hexagon band on the sphere.

    The band is centered where the ring circle sits (cap population
    nu*(1 - cos phi)) and spans the f_{u-1} hexagons of the ring; values
    can land one site off the detected band.
    """
    arg = fibonacci(2 * u + 1) / ((2 * nu + 1) * math.pi)
    if arg > 1.0:
        raise ValueError(f"ring of rank {u} does not fit on a sphere of {2 * nu + 1} sites")
    cap = nu * (1.0 - math.sqrt(1.0 - arg))
    f = fibonacci(u - 1)
    return (
        math.floor((5.0 - f) / 2.0 + cap),
        math.floor((f + 3.0) / 2.0 + cap),
    )


# ---------------------------------------------------------------------------
# analytic distances
# ---------------------------------------------------------------------------

def _reduced_turn(lam: float, f: int) -> float:
    """Azimuthal advance of a +f step, reduced to (-pi, pi]."""
    frac = (lam * f) % 1.0
    if frac > 0.5:
        frac -= 1.0
    return 2.0 * math.pi * frac


def _chart_profile(surface: SurfaceSpec, s):
    """(r(s), dr/ds, conformal factor at r) for the radial chart profile."""
    s = np.asarray(s, dtype=float)
    a = surface.a
    if surface.kind == PLANE:
        r = a * np.sqrt(s)
        return r, a / (2.0 * np.sqrt(s)), np.ones_like(r)
    if surface.kind == HYPERBOLIC:
        rho_hat = np.arccosh(a * a * s / 2.0 + 1.0)
        r = np.tanh(rho_hat / 2.0)
        dr = (1.0 - r * r) / 2.0 * (a * a / 2.0) / np.sinh(rho_hat)
        return r, dr, 2.0 * surface.R / (1.0 - r * r)
    # integer-indexed sites sit at cos(colat) = 1 - s/nu exactly, which is
    # mirror-symmetric about the equator (the continuum 1 - 2s/n is not,
    # and its skew is what the far-pole links feel)
    nu = (4.0 / (a * a) - 1.0) / 2.0
    cos_colat = 1.0 - s / nu
    colat = np.arccos(cos_colat)
    r = np.tan(colat / 2.0)
    dr = (1.0 + r * r) / (2.0 * nu * np.sin(colat))
    return r, dr, 2.0 * surface.R / (1.0 + r * r)


def analytic_distance(surface: SurfaceSpec, s, u: int):
    """First-order parastichy distance d_u(s) between sites s and s + f_u.

    A +f_u step moves f_u * dr/ds radially on the chart and turns the
    reduced azimuth gamma_u, so the chart displacement has length
    f_u * sqrt(dr/ds^2 + (gamma_u/f_u)^2 r^2); the conformal factor turns
    that into a geodesic length.  Evaluating at s treats the step as
    infinitesimal; averaging the evaluations at both endpoints cancels the
    leading correction.  Lengths come out in mean-cell-area-pi units.
    """
    s = np.asarray(s, dtype=float)
    if np.any(s < 1):
        raise ValueError("distance profile needs s >= 1")
    f = fibonacci(u)
    if f < 1:
        raise ValueError(f"rank {u} has no parastichy step")
    if surface.kind == SPHERE and np.any(s + f >= 4.0 / (surface.a * surface.a) - 1.0):
        raise ValueError("s + f_u at or beyond the far pole")
    gamma = _reduced_turn(surface.lam, f)

    def one_sided(ss):
        r, dr, lam_factor = _chart_profile(surface, ss)
        return f * lam_factor * np.hypot(dr, (gamma / f) * r)

    scale = normalization_scale(surface)
    return (one_sided(s) + one_sided(s + f)) / 2.0 / scale


# ---------------------------------------------------------------------------
# measured series
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class DistanceSeries:
    """All positive-step neighbor links with their analytic predictions."""

    geometry: str
    s_from: np.ndarray
    s_to: np.ndarray
    rank: np.ndarray  # -1 when the step is not a Fibonacci number
    measured: np.ndarray
    analytic: np.ndarray  # nan where the first-order form is undefined
    interior: np.ndarray  # both endpoints non-boundary and outside the core

    def confinement(self) -> tuple[float, float]:
        d = self.measured[self.interior]
        return float(d.min()), float(d.max())

    def summary(self) -> dict:
        return {
            "links": int(len(self.measured)),
            "interior_links": int(np.sum(self.interior)),
            "min_interior": self.confinement()[0],
            "max_interior": self.confinement()[1],
            "ranks": sorted(int(u) for u in np.unique(self.rank) if u > 0),
        }


def distance_series(tess: Tessellation) -> DistanceSeries:
    pattern = tess.pattern
    depth = site_depth(pattern, np.arange(pattern.n))
    boundary = tess.boundary_mask
    rows = []
    for s in range(pattern.n):
        for link in tess.adjacency[s]:
            if link.delta_s <= 0:
                continue
            ok = (
                not boundary[s]
                and not boundary[link.t]
                and depth[s] >= CORE_DEPTH
                and depth[link.t] >= CORE_DEPTH
            )
            rows.append((s, link.t, link.parastichy_rank or -1, link.distance, ok))
    s_from = np.array([r[0] for r in rows])
    s_to = np.array([r[1] for r in rows])
    rank = np.array([r[2] for r in rows])
    measured = np.array([r[3] for r in rows])
    interior = np.array([r[4] for r in rows])
    analytic = np.full(len(rows), np.nan)
    for u in np.unique(rank):
        if u < 2:
            continue
        m = (rank == u) & (s_from >= 1)
        if pattern.surface.kind == SPHERE:
            m &= s_to < pattern.n - 1
        if np.any(m):
            analytic[m] = analytic_distance(pattern.surface, s_from[m], int(u))
    return DistanceSeries(
        pattern.surface.kind, s_from, s_to, rank, measured, analytic, interior
    )


@dataclass(eq=False)
class AreaSeries:
    """Per-site cell areas with the statistics window used for the summary."""

    geometry: str
    s: np.ndarray
    area: np.ndarray  # nan on boundary cells
    window: np.ndarray
    mean: float
    stddev: float


def area_series(tess: Tessellation) -> AreaSeries:
    """Cell areas and their spread over the statistics window.

    The window keeps every cell at least EDGE_MARGIN_CELLS mean cell widths
    clear of the pattern edge (sphere patterns have no edge); the irregular
    core stays in, since its fixed handful of aberrant cells carries most of
    the area variance.
    """
    pattern = tess.pattern
    areas = tess.areas
    window = ~tess.boundary_mask
    if pattern.surface.kind != SPHERE:
        scale = normalization_scale(pattern.surface)
        rho = pattern.rho / scale
        window &= rho <= rho.max() - EDGE_MARGIN_CELLS * math.sqrt(math.pi)
    inside = areas[window]
    return AreaSeries(
        pattern.surface.kind,
        np.arange(pattern.n),
        areas,
        window,
        float(inside.mean()),
        float(inside.std()),
    )
