"""Exact metric densities and distances on model domains.

Two families live here and are deliberately kept apart:

* the Kobayashi-Royden infinitesimal metric (scale 1, F_disc(0;1) = 1) with
  closed forms on discs, balls, polydiscs, and round annuli; this is the
  oracle the disc estimator is judged against, and the annulus form reduces
  A(A,B) to the symmetric model {1/sqrt(R') < |w| < sqrt(R')} with
  R' = sqrt(B/A), which blows up at both walls as it must;

* the canonical conformal density on the symmetric annulus
  M = {1/sqrt(R) < |z| < sqrt(R)} whose scale-2 core circle has length
  pi^2 / ln R; curve lengths, the minimal-loop invariant, and Hausdorff
  comparisons quote this normalization.  It stays finite up to the walls of
  M, so it is not the Kobayashi metric of M itself; both routes are tested
  against each other only through inequalities that hold for both.

scale=1 is the library base (Kobayashi standard); scale=2 matches the
curvature -1 Poincare density 2/(1-|z|^2) on the unit disc.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .geometry import (
    Annulus,
    Ball,
    Disc,
    DomainDescriptor,
    Polydisc,
    as_point_array,
    membership,
)

CLOSED_FORM = "closed-form"
ESTIMATED_UPPER_BOUND = "estimated-upper-bound"


@dataclass(frozen=True)
class MetricValue:
    """An infinitesimal metric evaluation with its normalization and origin."""

    value: float
    scale: float
    source: str

    def __post_init__(self):
        if self.value < 0 or not np.isfinite(self.value):
            raise DomainError("metric values must be finite and nonnegative")
        if self.scale <= 0:
            raise DomainError("scale must be positive")

    def at_scale(self, scale: float) -> "MetricValue":
        return MetricValue(self.value * scale / self.scale, scale, self.source)

    def to_json(self) -> dict:
        return {"value": self.value, "scale": self.scale, "source": self.source}


def poincare_disc_density(p: complex, scale: float = 1.0) -> float:
    """Conformal density scale/(1-|p|^2) of the unit disc at p."""
    a = abs(complex(p))
    if a >= 1.0:
        raise DomainError("point must lie in the open unit disc")
    return scale / (1.0 - a * a)


def annulus_canonical_density(p: complex, R: float, scale: float = 1.0) -> float:
    """Canonical density on M = {1/sqrt(R) < |z| < sqrt(R)} at p.

    Per unit Euclidean vector:  (scale/2) * (pi / (2 ln R)) /
    (|p| * cos(pi * ln|p| / (2 ln R))).  The same squared coefficient
    multiplies the radial and angular terms of the underlying tensor; the
    scale-2 circumference of |z| = 1 is pi^2 / ln R.
    """
    if R <= 1.0:
        raise DomainError("annulus model requires R > 1")
    r = abs(complex(p))
    logR = np.log(R)
    if not (-0.5 * logR < np.log(r) < 0.5 * logR):
        raise DomainError("point must lie in 1/sqrt(R) < |p| < sqrt(R)")
    return (scale / 2.0) * (np.pi / (2.0 * logR)) / (r * np.cos(np.pi * np.log(r) / (2.0 * logR)))


def annulus_kobayashi_density(r_abs: float, inner: float, outer: float) -> float:
    """Scale-1 Kobayashi-Royden conformal factor of A(inner, outer) at |z| = r_abs.

    Reduction to the symmetric model of ratio sqrt(outer/inner) via
    z -> z / sqrt(inner * outer); diverges at both walls.
    """
    if not (inner < r_abs < outer):
        raise DomainError("radius outside the annulus")
    s = np.sqrt(inner * outer)
    log_ratio = np.log(outer / inner)
    w = r_abs / s
    return 0.5 * (np.pi / log_ratio) / (w * np.cos(np.pi * np.log(w) / log_ratio)) / s


# ---------------------------------------------------------------------------
# Kobayashi-Royden closed forms (scale 1)


def _ball_density(z: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Unit-ball Kobayashi metric, vectorized over leading axes."""
    nz2 = np.sum(np.abs(z) ** 2, axis=-1)
    herm = np.abs(np.sum(v * np.conj(z), axis=-1)) ** 2
    nv2 = np.sum(np.abs(v) ** 2, axis=-1)
    denom = 1.0 - nz2
    return np.sqrt(nv2 * denom + herm) / denom


def kob_royden_closed(domain: DomainDescriptor, p, v) -> MetricValue:
    """Exact Kobayashi-Royden metric F(p, v) at scale 1 for model domains."""
    pt = as_point_array(p, domain.dim)
    vec = as_point_array(v, domain.dim)
    if not membership(domain, pt):
        raise DomainError("metric evaluation point must be interior")
    if np.allclose(vec, 0):
        raise DomainError("direction must be nonzero")

    if isinstance(domain, Disc):
        z = pt[0] - domain.center
        val = domain.radius * abs(vec[0]) / (domain.radius**2 - abs(z) ** 2)
        return MetricValue(float(val), 1.0, CLOSED_FORM)
    if isinstance(domain, Ball):
        z = (pt - domain.center_array()) / domain.radius
        w = vec / domain.radius
        return MetricValue(float(_ball_density(z, w)), 1.0, CLOSED_FORM)
    if isinstance(domain, Polydisc):
        radii = np.asarray(domain.radii)
        vals = radii * np.abs(vec) / (radii**2 - np.abs(pt) ** 2)
        return MetricValue(float(np.max(vals)), 1.0, CLOSED_FORM)
    if isinstance(domain, Annulus):
        dens = annulus_kobayashi_density(abs(pt[0]), domain.inner, domain.outer)
        return MetricValue(float(dens * abs(vec[0])), 1.0, CLOSED_FORM)
    raise DomainError(f"no closed-form Kobayashi metric for kind '{domain.kind}'")


def has_closed_form(domain: DomainDescriptor) -> bool:
    return isinstance(domain, (Disc, Ball, Polydisc, Annulus))


def kob_density_fn(domain: DomainDescriptor) -> Callable[[np.ndarray, np.ndarray], np.ndarray] | None:
    """Vectorized scale-1 Kobayashi density (pts (N,n), vecs (N,n)) -> (N,)."""
    if isinstance(domain, Disc):
        c, R = domain.center, domain.radius

        def disc_fn(pts, vecs):
            z = pts[..., 0] - c
            return R * np.abs(vecs[..., 0]) / (R**2 - np.abs(z) ** 2)

        return disc_fn
    if isinstance(domain, Ball):
        c, R = domain.center_array(), domain.radius

        def ball_fn(pts, vecs):
            return _ball_density((pts - c) / R, vecs / R)

        return ball_fn
    if isinstance(domain, Polydisc):
        radii = np.asarray(domain.radii)

        def poly_fn(pts, vecs):
            return np.max(radii * np.abs(vecs) / (radii**2 - np.abs(pts) ** 2), axis=-1)

        return poly_fn
    if isinstance(domain, Annulus):
        s = np.sqrt(domain.inner * domain.outer)
        log_ratio = np.log(domain.ratio)

        def ann_fn(pts, vecs):
            w = np.abs(pts[..., 0]) / s
            dens = 0.5 * (np.pi / log_ratio) / (w * np.cos(np.pi * np.log(w) / log_ratio)) / s
            return dens * np.abs(vecs[..., 0])

        return ann_fn
    return None


def canonical_density_fn(domain: DomainDescriptor, scale: float) -> Callable[[np.ndarray, np.ndarray], np.ndarray] | None:
    """Canonical directional density at the requested scale.

    Coincides with scale * Kobayashi on discs, balls, and polydiscs; on a
    round annulus it is the canonical conformal density of the symmetric
    model of ratio B/A pulled back through z -> z / sqrt(A*B).
    """
    if isinstance(domain, Annulus):
        s = np.sqrt(domain.inner * domain.outer)
        logR = np.log(domain.ratio)

        def ann_fn(pts, vecs):
            w = np.abs(pts[..., 0]) / s
            dens = (scale / 2.0) * (np.pi / (2.0 * logR)) / (w * np.cos(np.pi * np.log(w) / (2.0 * logR)))
            return dens / s * np.abs(vecs[..., 0])

        return ann_fn
    base = kob_density_fn(domain)
    if base is None:
        return None

    def scaled(pts, vecs):
        return scale * base(pts, vecs)

    return scaled


# ---------------------------------------------------------------------------
# closed-form distances (scale 1)


def kob_distance_closed(domain: DomainDescriptor, p, q) -> float:
    """Exact Kobayashi distance on discs and balls (scale 1)."""
    pt = as_point_array(p, domain.dim)
    qt = as_point_array(q, domain.dim)
    for x in (pt, qt):
        if not membership(domain, x):
            raise DomainError("distance endpoints must be interior")

    if isinstance(domain, Disc):
        a = (pt[0] - domain.center) / domain.radius
        b = (qt[0] - domain.center) / domain.radius
        rho = abs(a - b) / abs(1.0 - np.conj(a) * b)
        return float(np.arctanh(rho))
    if isinstance(domain, Ball):
        a = (pt - domain.center_array()) / domain.radius
        b = (qt - domain.center_array()) / domain.radius
        na2 = float(np.sum(np.abs(a) ** 2))
        nb2 = float(np.sum(np.abs(b) ** 2))
        inner = complex(np.sum(a * np.conj(b)))
        rho2 = 1.0 - (1.0 - na2) * (1.0 - nb2) / abs(1.0 - inner) ** 2
        rho2 = min(max(rho2, 0.0), 1.0 - 1e-300)
        return float(np.arctanh(np.sqrt(rho2)))
    raise DomainError(f"no closed-form Kobayashi distance for kind '{domain.kind}'")


def has_closed_distance(domain: DomainDescriptor) -> bool:
    return isinstance(domain, (Disc, Ball))
