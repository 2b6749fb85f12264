"""Fixed points of holomorphic self-maps with relatively compact image.

A self-map whose image keeps a uniform Euclidean margin from the boundary is
a strict contraction in the domain's invariant metric, so iteration from any
start converges to the unique fixed point.  check_strict_image measures the
margin by dense sampling and hands back the shrunken intermediate domain;
iterate_to_fixed_point runs the iteration from several starts, demands the
limits agree, and validates the observed per-step distance decay against the
certified comparison constant of the (shrunken, full) pair.  The
degree-collapse demo ties this to topology: once iterates fit inside a ball
contained in the target tube, the map's loop degree must be zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distgraph import kob_distances_from
from .errors import BudgetError, ConfigError, DomainError, KoblabError
from .estimator import OptimizerBudget, uniform_monotonicity_report
from .geometry import (
    CPoint,
    DomainDescriptor,
    Generic,
    TubeCircle,
    as_point_array,
    dist_to_complement,
    membership,
)
from .invariants import _check_sampled_containment, tube_map_degree
from .parallel import pmap, rng_for
from .polymap import PolyMap

_LIGHT_BUDGET = OptimizerBudget(max_degree=1, restarts=1, max_iters=0, boundary_angles=64)


@dataclass(frozen=True)
class FixedPointReport:
    """Converged iteration with its certified contraction evidence."""

    z0: CPoint
    iterates: tuple[CPoint, ...]
    kob_rates: tuple[float, ...]
    c_certified: float
    converged: bool
    distinct_starts_agreement: float

    def to_json(self) -> dict:
        return {
            "z0": self.z0.to_json(),
            "n_iterates": len(self.iterates),
            "iterates": [p.to_json() for p in self.iterates[-20:]],
            "kob_rates": list(self.kob_rates),
            "c_certified": self.c_certified,
            "converged": self.converged,
            "distinct_starts_agreement": self.distinct_starts_agreement,
        }


def check_strict_image(f: PolyMap, domain: DomainDescriptor, samples: int = 512) -> tuple[Generic, float]:
    """Measure the image's margin from the boundary; return the shrunken domain.

    Samples the domain densely (interior plus near-wall points), evaluates f,
    and takes delta = min dist_to_complement over images.  Fails when the
    margin falls below 1e-3 of the domain diameter.  The returned descriptor
    is {p : dist_to_complement(p) > delta/2}, which contains f(domain) with
    room to spare on both sides.
    """
    if f.n_in != domain.dim or f.n_out != domain.dim:
        raise ConfigError("self-map shape must match the domain")
    rng = rng_for("strict-image", repr(domain), samples)
    pts = domain.sample_interior(samples, rng, margin=0.0)
    anchor = pts.mean(axis=0)
    wall = domain.boundary_points(samples, rng)
    inward = wall + 1e-4 * (anchor - wall)
    inward = inward[domain.signed_dist(inward) > 0]
    cloud = np.concatenate([pts, inward], axis=0)
    margins = domain.signed_dist(f(cloud))
    delta = float(np.min(margins))
    if delta <= 1e-3 * domain.diameter_bound():
        raise DomainError("image not relatively compact (at sampling density)")
    shrunk = Generic(
        lambda q, d=domain, m=delta: d.signed_dist(q) - m / 2,
        domain.bbox(),
        label=f"shrunk({domain!r})",
    )
    return shrunk, delta


def _iterate_one(f: PolyMap, x0: np.ndarray, tol: float, max_iter: int) -> list[np.ndarray]:
    traj = [x0]
    x = x0
    for _ in range(max_iter):
        nxt = f(x[None, :])[0]
        traj.append(nxt)
        if np.linalg.norm(nxt - x) < tol:
            return traj
        x = nxt
    raise BudgetError("did not converge in budget")


def iterate_to_fixed_point(
    f: PolyMap,
    domain: DomainDescriptor,
    starts=None,
    tol: float = 1e-9,
    max_iter: int = 5000,
) -> FixedPointReport:
    """Iterate f from several starts and certify the contraction behavior."""
    inner, _delta = check_strict_image(f, domain)
    if starts is None:
        rng = rng_for("fp-starts", repr(domain))
        starts = list(domain.sample_interior(5, rng, margin=0.05 * domain.diameter_bound()))
    start_pts = [as_point_array(s, domain.dim) for s in starts]
    for s in start_pts:
        if not membership(domain, s):
            raise DomainError("all starts must be interior")

    trajs = pmap(lambda s: _iterate_one(f, s, tol, max_iter), start_pts)
    limits = np.stack([t[-1] for t in trajs])
    agreement = 0.0
    for i in range(len(limits)):
        for j in range(i + 1, len(limits)):
            agreement = max(agreement, float(np.linalg.norm(limits[i] - limits[j])))
    if agreement > 10 * tol:
        raise KoblabError("uniqueness violation - inconsistent estimates")

    residuals = [float(np.linalg.norm(f(z[None, :])[0] - z)) for z in limits]
    z0 = limits[int(np.argmin(residuals))]
    best_res = min(residuals)
    # polish: each extra application of a contraction shrinks the residual
    for _ in range(24):
        nxt = f(z0[None, :])[0]
        res = float(np.linalg.norm(f(nxt[None, :])[0] - nxt))
        if res >= best_res:
            break
        z0, best_res = nxt, res
    converged = best_res < 1e-10

    # the ratio at z0 itself bounds the asymptotic contraction rate
    report = uniform_monotonicity_report(
        inner, domain, sample_points=4, probes=2, budget=_LIGHT_BUDGET, extra_points=[z0]
    )
    c_certified = report["c"]

    main = trajs[0]
    floor = 1e-7 * domain.diameter_bound()
    tail = [x for x in main if np.linalg.norm(x - z0) > floor][-12:]
    rates: tuple[float, ...] = ()
    if len(tail) >= 2:
        # sub-lattice accuracy comes from the direct integrated edges, so the
        # lattice may stay coarse; its node count grows like (spread/step)^2n
        denom = 6.0 if domain.dim == 1 else 2.0
        step = max(np.linalg.norm(np.stack(tail) - z0, axis=1).max() / denom, 1e3 * floor)
        rates = tuple(float(v) for v in kob_distances_from(domain, z0, tail, lattice_step=step))
        ratios = [b / a for a, b in zip(rates, rates[1:]) if a > 0]
        if any(r > c_certified + 0.05 for r in ratios[-10:]):
            raise KoblabError("contraction tail exceeds the certified rate")

    return FixedPointReport(
        z0=CPoint(tuple(z0)),
        iterates=tuple(CPoint(tuple(x)) for x in main),
        kob_rates=rates,
        c_certified=float(c_certified),
        converged=converged,
        distinct_starts_agreement=agreement,
    )


def degree_collapse_demo(
    f: PolyMap,
    source: TubeCircle,
    target: TubeCircle,
    horizon: int = 5,
    samples: int = 128,
) -> dict:
    """Iterate a tube contraction and confront its degree with the collapse.

    Checks deg(f^k) = (deg f)^k along the way; once the iterated image cloud
    fits inside a Euclidean ball contained in the target tube (a contractible
    set), the map must have degree 0, and the verdict records where that
    happened.
    """
    if not isinstance(source, TubeCircle) or not isinstance(target, TubeCircle):
        raise ConfigError("demo runs on circle tubes")
    check_strict_image(f, source)
    if source.n != target.n or not target.r < source.r:
        raise ConfigError("target tube must be strictly thinner than the source")
    _check_sampled_containment(f, source, target, samples)
    deg = tube_map_degree(f, source, target)

    t = np.linspace(0.0, 2 * np.pi, 257)
    core = np.zeros((len(t), source.dim), dtype=complex)
    core[:, 0] = np.exp(1j * t)
    rng = rng_for("collapse", repr(source), samples)
    cloud = np.concatenate([core, source.sample_interior(samples, rng)], axis=0)

    iterate_degrees: list[int] = []
    collapse_at = None
    imgs = cloud
    loop = core
    for k in range(1, horizon + 1):
        imgs = f(imgs)
        loop = f(loop)
        w = loop[:, 0]
        if np.any(np.abs(w) < 1e-13):
            raise DomainError("projection undefined: zero image point")
        deg_k = _winding(w)
        iterate_degrees.append(deg_k)
        if deg_k != deg**k:
            raise KoblabError("degree multiplicativity failed under iteration")
        centroid = imgs.mean(axis=0)
        spread = float(np.linalg.norm(imgs - centroid, axis=1).max())
        if collapse_at is None and membership(target, centroid):
            if spread < dist_to_complement(target, centroid):
                collapse_at = k
    if collapse_at is not None and deg != 0:
        raise KoblabError("collapse with nonzero degree is impossible")
    verdict = "degree-zero collapse" if collapse_at is not None else "no collapse within horizon"
    return {
        "degree": deg,
        "iterate_degrees": iterate_degrees,
        "collapse_at": collapse_at,
        "verdict": verdict,
    }


def _winding(w: np.ndarray) -> int:
    steps = np.angle(w[1:] / w[:-1])
    total = float(np.sum(steps)) / (2 * np.pi)
    nearest = int(np.rint(total))
    if abs(total - nearest) >= 0.1:
        raise DomainError("curve too coarse for winding")
    return nearest
