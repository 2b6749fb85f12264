"""Domains in C^n with membership and boundary-distance queries.

Every domain kind answers three questions: does a point belong to the open
set, how far is an interior point from the complement (Euclidean), and how
deep inside or outside an arbitrary point sits (the vectorized signed field
used by samplers and the disc optimizer).  Closed-form kinds answer exactly;
Generic domains carry a user-supplied distance field that must be positive
inside, nonpositive outside, and 1-Lipschitz to keep downstream bounds valid.

Points are stored as complex coordinate tuples.  JSON wire format encodes a
complex number as a two-element [re, im] array.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ConfigError, DomainError

# ---------------------------------------------------------------------------
# points and tangent vectors


def _to_complex_tuple(values: Iterable) -> tuple[complex, ...]:
    out = tuple(complex(v) for v in values)
    if not out:
        raise DomainError("at least one coordinate required")
    if not all(np.isfinite(v.real) and np.isfinite(v.imag) for v in out):
        raise DomainError("coordinates must be finite")
    return out


@dataclass(frozen=True)
class CPoint:
    """A point of C^n."""

    coords: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _to_complex_tuple(self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=complex)

    def to_json(self) -> list[list[float]]:
        return [[z.real, z.imag] for z in self.coords]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[float]]) -> "CPoint":
        return cls(tuple(complex(re, im) for re, im in data))


@dataclass(frozen=True)
class TVector:
    """A tangent vector at a point of C^n; caches its Euclidean norm."""

    comps: tuple[complex, ...]
    euclid_norm: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "comps", _to_complex_tuple(self.comps))
        norm = float(np.linalg.norm(np.asarray(self.comps, dtype=complex)))
        if self.euclid_norm is None:
            object.__setattr__(self, "euclid_norm", norm)
        elif abs(self.euclid_norm - norm) > 1e-12 * max(1.0, norm):
            raise DomainError("cached euclid_norm disagrees with components")
        if norm == 0.0:
            raise DomainError("tangent vector must be nonzero")

    @property
    def n(self) -> int:
        return len(self.comps)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.comps, dtype=complex)


def as_point_array(p, n: int | None = None) -> np.ndarray:
    """Coerce a CPoint / scalar / sequence to a complex (n,) array."""
    if isinstance(p, CPoint):
        arr = p.as_array()
    elif isinstance(p, TVector):
        arr = p.as_array()
    elif np.isscalar(p):
        arr = np.asarray([p], dtype=complex)
    else:
        arr = np.asarray(p, dtype=complex).reshape(-1)
    if n is not None and arr.shape != (n,):
        raise DomainError(f"expected a point of C^{n}, got shape {arr.shape}")
    return arr


# ---------------------------------------------------------------------------
# domain descriptors


class DomainDescriptor:
    """Base class: open connected bounded domain in C^n."""

    kind: str = "abstract"

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def signed_dist(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized signed boundary distance: positive inside, <=0 outside.

        pts has shape (..., dim).  For closed-form kinds the value is the
        exact Euclidean distance to the complement (or its negation outside).
        """
        raise NotImplementedError

    def bbox(self) -> np.ndarray:
        """Axis-aligned bounding box, shape (2*dim, 2) of (lo, hi) real rows."""
        raise NotImplementedError

    def boundary_points(self, count: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def sample_interior(
        self, count: int, rng: np.random.Generator, margin: float = 0.0
    ) -> np.ndarray:
        """Rejection-sample interior points with signed_dist > margin."""
        box = self.bbox()
        lo, hi = box[:, 0], box[:, 1]
        out = np.empty((count, self.dim), dtype=complex)
        got = 0
        for _ in range(10_000):
            batch = max(4 * count, 64)
            reals = rng.uniform(lo, hi, size=(batch, 2 * self.dim))
            pts = reals[:, 0::2] + 1j * reals[:, 1::2]
            keep = pts[self.signed_dist(pts) > margin]
            take = min(count - got, keep.shape[0])
            out[got : got + take] = keep[:take]
            got += take
            if got == count:
                return out
        raise DomainError("interior sampling failed; domain volume too small in bbox")

    def diameter_bound(self) -> float:
        """An upper bound on the Euclidean diameter (exact where simple)."""
        box = self.bbox()
        return float(np.linalg.norm(box[:, 1] - box[:, 0]))

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:  # compact, used in cache keys and reports
        return f"{type(self).__name__}({self.to_json()})"


def _cx_json(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


@dataclass(frozen=True, repr=False)
class Disc(DomainDescriptor):
    center: complex = 0j
    radius: float = 1.0
    kind = "disc"

    def __post_init__(self):
        if not (self.radius > 0):
            raise DomainError("disc radius must be positive")

    @property
    def dim(self) -> int:
        return 1

    def signed_dist(self, pts):
        pts = np.asarray(pts, dtype=complex)
        return self.radius - np.abs(pts[..., 0] - self.center)

    def bbox(self):
        c, r = self.center, self.radius
        return np.array([[c.real - r, c.real + r], [c.imag - r, c.imag + r]])

    def boundary_points(self, count, rng):
        theta = rng.uniform(0.0, 2 * np.pi, size=count)
        return (self.center + self.radius * np.exp(1j * theta))[:, None]

    def diameter_bound(self):
        return 2.0 * self.radius

    def to_json(self):
        return {"kind": "disc", "center": _cx_json(self.center), "radius": self.radius}


@dataclass(frozen=True, repr=False)
class Annulus(DomainDescriptor):
    """Round annulus centered at the origin: inner < |z| < outer."""

    inner: float
    outer: float
    kind = "annulus"

    def __post_init__(self):
        if not (0 < self.inner < self.outer):
            raise DomainError("annulus requires 0 < inner < outer")

    @property
    def dim(self) -> int:
        return 1

    @property
    def ratio(self) -> float:
        return self.outer / self.inner

    def signed_dist(self, pts):
        pts = np.asarray(pts, dtype=complex)
        r = np.abs(pts[..., 0])
        return np.minimum(r - self.inner, self.outer - r)

    def bbox(self):
        b = self.outer
        return np.array([[-b, b], [-b, b]])

    def boundary_points(self, count, rng):
        theta = rng.uniform(0.0, 2 * np.pi, size=count)
        radii = np.where(np.arange(count) % 2 == 0, self.inner, self.outer)
        return (radii * np.exp(1j * theta))[:, None]

    def diameter_bound(self):
        return 2.0 * self.outer

    def to_json(self):
        return {"kind": "annulus", "inner": self.inner, "outer": self.outer}


@dataclass(frozen=True, repr=False)
class Ball(DomainDescriptor):
    n: int
    center: tuple[complex, ...] = None  # type: ignore[assignment]
    radius: float = 1.0
    kind = "ball"

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("ball dimension must be >= 1")
        center = self.center if self.center is not None else (0j,) * self.n
        object.__setattr__(self, "center", _to_complex_tuple(center))
        if len(self.center) != self.n:
            raise DomainError("ball center length must match n")
        if not (self.radius > 0):
            raise DomainError("ball radius must be positive")

    @property
    def dim(self) -> int:
        return self.n

    def center_array(self) -> np.ndarray:
        return np.asarray(self.center, dtype=complex)

    def signed_dist(self, pts):
        pts = np.asarray(pts, dtype=complex)
        return self.radius - np.linalg.norm(pts - self.center_array(), axis=-1)

    def bbox(self):
        c, r = self.center_array(), self.radius
        rows = []
        for z in c:
            rows.append([z.real - r, z.real + r])
            rows.append([z.imag - r, z.imag + r])
        return np.array(rows)

    def boundary_points(self, count, rng):
        reals = rng.standard_normal(size=(count, 2 * self.n))
        reals /= np.linalg.norm(reals, axis=1, keepdims=True)
        dirs = reals[:, 0::2] + 1j * reals[:, 1::2]
        return self.center_array() + self.radius * dirs

    def diameter_bound(self):
        return 2.0 * self.radius

    def to_json(self):
        return {
            "kind": "ball",
            "n": self.n,
            "center": [_cx_json(z) for z in self.center],
            "radius": self.radius,
        }


@dataclass(frozen=True, repr=False)
class Polydisc(DomainDescriptor):
    """Product of discs centered at the origin with the given radii."""

    radii: tuple[float, ...]
    kind = "polydisc"

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii or any(r <= 0 for r in radii):
            raise DomainError("polydisc radii must be positive")

    @property
    def dim(self) -> int:
        return len(self.radii)

    def signed_dist(self, pts):
        pts = np.asarray(pts, dtype=complex)
        return np.min(np.asarray(self.radii) - np.abs(pts), axis=-1)

    def bbox(self):
        rows = []
        for r in self.radii:
            rows.append([-r, r])
            rows.append([-r, r])
        return np.array(rows)

    def boundary_points(self, count, rng):
        n = self.dim
        radii = np.asarray(self.radii)
        theta = rng.uniform(0.0, 2 * np.pi, size=(count, n))
        rho = np.sqrt(rng.uniform(0.0, 1.0, size=(count, n)))
        pts = radii * rho * np.exp(1j * theta)
        face = rng.integers(0, n, size=count)
        pts[np.arange(count), face] = radii[face] * np.exp(1j * theta[:, 0])
        return pts

    def diameter_bound(self):
        return 2.0 * float(np.sqrt(np.sum(np.square(self.radii))))

    def to_json(self):
        return {"kind": "polydisc", "radii": list(self.radii)}


@dataclass(frozen=True, repr=False)
class TubeCircle(DomainDescriptor):
    """Points of C^n within Euclidean distance r of the circle {(e^{it},0,...,0)}."""

    n: int
    r: float
    kind = "tube_circle"

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("tube dimension must be >= 1")
        if not (0 < self.r < 1):
            raise DomainError("tube radius must lie in (0, 1)")

    @property
    def dim(self) -> int:
        return self.n

    def core_dist(self, pts: np.ndarray) -> np.ndarray:
        """Euclidean distance to the core circle."""
        pts = np.asarray(pts, dtype=complex)
        d2 = (np.abs(pts[..., 0]) - 1.0) ** 2
        if self.n > 1:
            d2 = d2 + np.sum(np.abs(pts[..., 1:]) ** 2, axis=-1)
        return np.sqrt(d2)

    def signed_dist(self, pts):
        return self.r - self.core_dist(pts)

    def bbox(self):
        rows = [[-(1 + self.r), 1 + self.r], [-(1 + self.r), 1 + self.r]]
        for _ in range(self.n - 1):
            rows.append([-self.r, self.r])
            rows.append([-self.r, self.r])
        return np.array(rows)

    def _normal_frame(self, count, rng, radius_scale):
        phi = rng.uniform(0.0, 2 * np.pi, size=count)
        normals = rng.standard_normal(size=(count, 1 + 2 * (self.n - 1)))
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
        normals *= radius_scale[:, None]
        pts = np.zeros((count, self.n), dtype=complex)
        pts[:, 0] = (1.0 + normals[:, 0]) * np.exp(1j * phi)
        if self.n > 1:
            pts[:, 1:] = normals[:, 1::2] + 1j * normals[:, 2::2]
        return pts

    def boundary_points(self, count, rng):
        return self._normal_frame(count, rng, np.full(count, self.r))

    def sample_interior(self, count, rng, margin=0.0):
        if margin >= self.r:
            raise DomainError("margin exceeds tube radius")
        dim_n = 1 + 2 * (self.n - 1)
        u = rng.uniform(0.0, 1.0, size=count) ** (1.0 / dim_n)
        return self._normal_frame(count, rng, (self.r - margin) * u * 0.999)

    def diameter_bound(self):
        return 2.0 * (1.0 + self.r)

    def to_json(self):
        return {"kind": "tube_circle", "n": self.n, "r": self.r}


@dataclass(frozen=True, repr=False)
class TubeSphere(DomainDescriptor):
    """Points of C^{k+1} within distance r of the real unit sphere S^k."""

    k: int
    r: float
    kind = "tube_sphere"

    def __post_init__(self):
        if self.k not in (1, 2):
            raise DomainError("sphere tubes support k in {1, 2}")
        if not (0 < self.r < 0.5):
            raise DomainError("sphere tube radius must lie in (0, 1/2)")

    @property
    def dim(self) -> int:
        return self.k + 1

    def core_dist(self, pts: np.ndarray) -> np.ndarray:
        """Distance to S^k: the real part projects radially, the imaginary
        part is untouched."""
        pts = np.asarray(pts, dtype=complex)
        x = np.real(pts)
        y = np.imag(pts)
        radial = np.linalg.norm(x, axis=-1) - 1.0
        return np.sqrt(radial**2 + np.sum(y**2, axis=-1))

    def signed_dist(self, pts):
        return self.r - self.core_dist(pts)

    def bbox(self):
        rows = []
        for _ in range(self.k + 1):
            rows.append([-(1 + self.r), 1 + self.r])
            rows.append([-self.r, self.r])
        return np.array(rows)

    def _normal_frame(self, count, rng, radius_scale):
        base = rng.standard_normal(size=(count, self.k + 1))
        base /= np.linalg.norm(base, axis=1, keepdims=True)
        normals = rng.standard_normal(size=(count, self.k + 2))
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
        normals *= radius_scale[:, None]
        x = (1.0 + normals[:, :1]) * base
        y = normals[:, 1:]
        return x + 1j * y

    def boundary_points(self, count, rng):
        return self._normal_frame(count, rng, np.full(count, self.r))

    def sample_interior(self, count, rng, margin=0.0):
        if margin >= self.r:
            raise DomainError("margin exceeds tube radius")
        dim_n = self.k + 2
        u = rng.uniform(0.0, 1.0, size=count) ** (1.0 / dim_n)
        return self._normal_frame(count, rng, (self.r - margin) * u * 0.999)

    def diameter_bound(self):
        return 2.0 * (1.0 + self.r)

    def to_json(self):
        return {"kind": "tube_sphere", "k": self.k, "r": self.r}


class Generic(DomainDescriptor):
    """Domain described by a user distance field on C^n plus a bounding box.

    The field must return values with the meaning of signed_dist: positive
    inside (a lower bound on the Euclidean distance to the complement that
    is exact where the caller needs exactness), nonpositive outside.
    """

    kind = "generic"

    def __init__(self, dist_fn: Callable[[np.ndarray], np.ndarray], bbox: np.ndarray, label: str = "generic"):
        box = np.asarray(bbox, dtype=float)
        if box.ndim != 2 or box.shape[1] != 2 or box.shape[0] % 2 != 0:
            raise DomainError("bbox must have shape (2n, 2)")
        if np.any(box[:, 1] <= box[:, 0]):
            raise DomainError("bbox rows must satisfy lo < hi")
        self._dist_fn = dist_fn
        self._bbox = box
        self.label = label

    @property
    def dim(self) -> int:
        return self._bbox.shape[0] // 2

    def signed_dist(self, pts):
        pts = np.asarray(pts, dtype=complex)
        flat = pts.reshape(-1, self.dim)
        vals = np.asarray(self._dist_fn(flat), dtype=float).reshape(pts.shape[:-1])
        return vals

    def bbox(self):
        return self._bbox.copy()

    def boundary_points(self, count, rng):
        inside = self.sample_interior(count, rng)
        box = self.bbox()
        span = float(np.max(box[:, 1] - box[:, 0]))
        dirs = rng.standard_normal(size=(count, 2 * self.dim))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        cdirs = dirs[:, 0::2] + 1j * dirs[:, 1::2]
        lo_t = np.zeros(count)
        hi_t = np.full(count, span)
        # walk out until every ray has certainly left the domain
        for _ in range(3):
            still = (self.signed_dist(inside + hi_t[:, None] * cdirs) > 0) & (hi_t < 8 * span)
            if not np.any(still):
                break
            hi_t[still] *= 2.0
        for _ in range(60):
            mid = 0.5 * (lo_t + hi_t)
            pos = self.signed_dist(inside + mid[:, None] * cdirs) > 0
            lo_t = np.where(pos, mid, lo_t)
            hi_t = np.where(pos, hi_t, mid)
        return inside + lo_t[:, None] * cdirs

    def to_json(self):
        raise ConfigError("generic domains carry a callable and have no JSON form")

    def __repr__(self) -> str:
        # the callable has no serial form; label + box identify the domain
        corners = np.round(self._bbox, 12).tolist()
        return f"Generic(label={self.label!r}, bbox={corners})"


# ---------------------------------------------------------------------------
# operations


def membership(domain: DomainDescriptor, p) -> bool:
    """True iff p lies in the open domain."""
    pt = as_point_array(p, domain.dim)
    return bool(domain.signed_dist(pt[None, :])[0] > 0)


def dist_to_complement(domain: DomainDescriptor, p) -> float:
    """Euclidean distance from an interior point to the complement."""
    pt = as_point_array(p, domain.dim)
    val = float(domain.signed_dist(pt[None, :])[0])
    if val <= 0:
        raise DomainError(f"point {pt.tolist()} is not in the domain")
    return val


def domain_separation(inner: DomainDescriptor, outer: DomainDescriptor, samples: int = 4096) -> float:
    """Infimum over the inner boundary of the distance to the outer complement.

    Exact for aligned closed-form pairs; otherwise a sampled infimum minus a
    Lipschitz mesh cushion, so the result under-estimates the true separation
    (the conservative direction for comparison bounds).  Raises DomainError
    when the inner closure is not contained in the outer domain.
    """
    if inner.dim != outer.dim:
        raise DomainError("domains must share an ambient dimension")

    delta = _exact_separation(inner, outer)
    if delta is None:
        rng = np.random.default_rng(20260815)
        best = np.inf
        prev = None
        count = samples
        for _ in range(3):
            pts = inner.boundary_points(count, rng)
            vals = outer.signed_dist(pts)
            best = min(best, float(np.min(vals)))
            if prev is not None and abs(best - prev) <= 0.01 * max(abs(best), 1e-12):
                break
            prev = best
            count *= 2
        # cushion: nearest-sample spacing bound from the sampled cloud itself
        cushion = 0.05 * abs(best) + 1e-9
        delta = best - cushion
    if delta <= 0:
        raise DomainError("inner domain is not relatively compact in the outer domain")
    return float(delta)


def _exact_separation(inner: DomainDescriptor, outer: DomainDescriptor) -> float | None:
    if isinstance(inner, Disc) and isinstance(outer, Disc):
        return outer.radius - abs(inner.center - outer.center) - inner.radius
    if isinstance(inner, Ball) and isinstance(outer, Ball):
        gap = np.linalg.norm(inner.center_array() - outer.center_array())
        return outer.radius - float(gap) - inner.radius
    if isinstance(inner, Disc) and isinstance(outer, Annulus):
        lo = abs(inner.center) - inner.radius - outer.inner
        hi = outer.outer - (abs(inner.center) + inner.radius)
        return min(lo, hi)
    if isinstance(inner, Annulus) and isinstance(outer, Annulus):
        return min(inner.inner - outer.inner, outer.outer - inner.outer)
    if isinstance(inner, Annulus) and isinstance(outer, Disc) and outer.center == 0:
        return outer.radius - inner.outer
    if isinstance(inner, Polydisc) and isinstance(outer, Polydisc):
        if inner.dim != outer.dim:
            return None
        return float(min(ro - ri for ri, ro in zip(inner.radii, outer.radii)))
    if isinstance(inner, TubeCircle) and isinstance(outer, TubeCircle) and inner.n == outer.n:
        return outer.r - inner.r
    if isinstance(inner, TubeSphere) and isinstance(outer, TubeSphere) and inner.k == outer.k:
        return outer.r - inner.r
    if isinstance(inner, Ball) and isinstance(outer, Polydisc):
        gaps = [r - abs(c) for r, c in zip(outer.radii, inner.center)]
        return float(min(gaps) - inner.radius)
    return None


# ---------------------------------------------------------------------------
# sampled curves


@dataclass(frozen=True)
class SampledCurve:
    """A polyline q: [a, b] -> C^n given by parameter values and sample points."""

    params: tuple[float, ...]
    points: tuple[CPoint, ...]
    closed: bool = False

    def __post_init__(self):
        params = tuple(float(t) for t in self.params)
        object.__setattr__(self, "params", params)
        pts = tuple(p if isinstance(p, CPoint) else CPoint(tuple(np.atleast_1d(p))) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(params) != len(pts):
            raise DomainError("params and points must have equal length")
        if len(params) < 2:
            raise DomainError("a curve needs at least two samples")
        if any(b <= a for a, b in zip(params, params[1:])):
            raise DomainError("params must be strictly increasing")
        dims = {p.n for p in pts}
        if len(dims) != 1:
            raise DomainError("curve points must share an ambient dimension")
        if self.closed:
            gap = np.linalg.norm(pts[0].as_array() - pts[-1].as_array())
            if gap > 1e-12 * max(1.0, np.linalg.norm(pts[0].as_array())):
                raise DomainError("closed curve endpoints must coincide")

    @property
    def n(self) -> int:
        return self.points[0].n

    @property
    def n_segments(self) -> int:
        return len(self.points) - 1

    def point_array(self) -> np.ndarray:
        return np.stack([p.as_array() for p in self.points])

    @classmethod
    def from_array(cls, pts: np.ndarray, closed: bool = False, params: Sequence[float] | None = None) -> "SampledCurve":
        pts = np.asarray(pts, dtype=complex)
        if pts.ndim == 1:
            pts = pts[:, None]
        if params is None:
            params = np.arange(pts.shape[0], dtype=float)
        return cls(tuple(params), tuple(CPoint(tuple(row)) for row in pts), closed)

    def to_json(self) -> dict:
        return {
            "params": list(self.params),
            "points": [p.to_json() for p in self.points],
            "closed": self.closed,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SampledCurve":
        return cls(
            tuple(data["params"]),
            tuple(CPoint.from_json(p) for p in data["points"]),
            bool(data.get("closed", False)),
        )


def curve_in_domain(domain: DomainDescriptor, curve: SampledCurve, per_segment: int = 8) -> bool:
    """Sampled check that the polyline (including segment interiors) stays inside."""
    pts = curve.point_array()
    if pts.shape[1] != domain.dim:
        raise DomainError("curve dimension does not match domain")
    ts = np.linspace(0.0, 1.0, per_segment + 1)[:, None, None]
    seg = pts[:-1][None, :, :] * (1 - ts) + pts[1:][None, :, :] * ts
    return bool(np.all(domain.signed_dist(seg.reshape(-1, domain.dim)) > 0))


# ---------------------------------------------------------------------------
# JSON wire format

_KIND_MAP = {}


def domain_from_json(data: dict) -> DomainDescriptor:
    """Parse a domain descriptor from its JSON dict form."""
    try:
        kind = data["kind"]
    except (KeyError, TypeError) as exc:
        raise ConfigError("domain JSON requires a 'kind' field") from exc
    try:
        if kind == "disc":
            center = data.get("center", [0.0, 0.0])
            return Disc(complex(center[0], center[1]), float(data["radius"]))
        if kind == "annulus":
            return Annulus(float(data["inner"]), float(data["outer"]))
        if kind == "ball":
            n = int(data["n"])
            center = data.get("center")
            ctuple = tuple(complex(re, im) for re, im in center) if center else None
            return Ball(n, ctuple, float(data.get("radius", 1.0)))
        if kind == "polydisc":
            return Polydisc(tuple(float(r) for r in data["radii"]))
        if kind == "tube_circle":
            return TubeCircle(int(data["n"]), float(data["r"]))
        if kind == "tube_sphere":
            return TubeSphere(int(data["k"]), float(data["r"]))
    except DomainError:
        raise
    except Exception as exc:
        raise ConfigError(f"malformed domain JSON for kind '{kind}': {exc}") from exc
    raise ConfigError(f"unknown domain kind '{kind}'")
