"""Upper estimation of the Kobayashi-Royden metric by polynomial discs.

A candidate is a polynomial map f(z) = sum_j a_j z^j from the unit disc into
the domain with f(0) = p and f'(0) a positive multiple t of the prescribed
direction; every admissible candidate certifies the upper bound
F(p, v) <= ||v|| / t.  Admissibility during the search is enforced by
sampled membership on circles |z| in {0.9, 0.99, 0.999} plus a safety margin
derived from the coefficient norms; the incumbent is then re-certified on a
much finer grid before its value is reported, so the returned number is
always realized by a concrete disc.

Degree 1 is handled analytically: the affine disc p + t*z*u stays inside as
long as t does not exceed the Euclidean distance to the complement, which is
why the estimate at degree 1 equals ||v|| / dist_to_complement(p) exactly.

The comparison bounds at the bottom implement the separation inequality
F_outer(p, v) <= F_inner(p, v) / (1 + delta * b): an inner-admissible disc h
can be enlarged to h + delta*z*u and stays admissible for the outer domain,
which is also how nested estimator-only pairs are compared in practice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .closed_forms import (
    CLOSED_FORM,
    ESTIMATED_UPPER_BOUND,
    MetricValue,
    has_closed_form,
    kob_royden_closed,
)
from .errors import BudgetError, ConfigError, DomainError
from .geometry import (
    Annulus,
    Ball,
    Disc,
    DomainDescriptor,
    Polydisc,
    as_point_array,
    dist_to_complement,
    domain_separation,
    membership,
)
from .parallel import pmap, rng_for

_SEARCH_RADII = (0.9, 0.99, 0.999)


@dataclass(frozen=True)
class OptimizerBudget:
    """Knobs of the polynomial-disc search."""

    max_degree: int = 6
    restarts: int = 8
    max_iters: int = 2000
    boundary_angles: int = 256
    margin: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.max_degree < 1:
            raise ConfigError("max_degree must be >= 1")
        if self.restarts < 1:
            raise ConfigError("restarts must be >= 1")
        if self.max_iters < 0:
            raise ConfigError("max_iters must be >= 0")
        if self.boundary_angles < 8:
            raise ConfigError("boundary_angles must be >= 8")
        if not (0 < self.margin < 0.5):
            raise ConfigError("margin must lie in (0, 0.5)")

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "restarts": self.restarts,
            "max_iters": self.max_iters,
            "boundary_angles": self.boundary_angles,
            "margin": self.margin,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict) -> "OptimizerBudget":
        known = {"max_degree", "restarts", "max_iters", "boundary_angles", "margin", "seed"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown budget fields: {sorted(unknown)}")
        try:
            return cls(**{k: v for k, v in data.items()})
        except TypeError as exc:
            raise ConfigError(f"malformed budget: {exc}") from exc


@dataclass(frozen=True)
class PolyDiscCandidate:
    """An admissible polynomial disc and the boundary evidence for it."""

    degree: int
    coeffs: np.ndarray  # (degree+1, n) complex; coeffs[0] = p
    boundary_samples: int  # certification evidence: test circles x angles

    @property
    def deriv_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs[1]))

    def eval(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        powers = z[..., None] ** np.arange(self.coeffs.shape[0])
        return powers @ self.coeffs


@dataclass(frozen=True)
class MonotonicityReport:
    """Separation bound versus observed metric ratio for a nested pair."""

    delta: float
    b_lower: float
    c_bound: float
    observed_ratio: float

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "b_lower": self.b_lower,
            "c_bound": self.c_bound,
            "observed_ratio": self.observed_ratio,
        }


# ---------------------------------------------------------------------------
# admissibility machinery


def _deriv_bound(coeffs: np.ndarray, rho: float) -> float:
    """sup of ||f'|| on |z| = rho from coefficient norms."""
    norms = np.linalg.norm(coeffs, axis=1)
    j = np.arange(len(norms))
    return float(np.sum(j[1:] * norms[1:] * rho ** (j[1:] - 1)))


def _is_psh_kind(domain: DomainDescriptor) -> bool:
    # membership of these kinds is a sublevel set of plurisubharmonic
    # functions of f(z), so interior containment follows from the outermost
    # checked circle by the maximum principle
    return isinstance(domain, (Disc, Ball, Polydisc, Annulus))


def _certify_scale(domain: DomainDescriptor, coeffs: np.ndarray, fine_angles: int = 2048) -> float:
    """Largest s in (0, 1] with f(s * closed disc) certified inside the domain.

    Returns 0.0 when even tiny discs fail (should not happen for candidates
    seeded at an interior point).
    """
    hi = 0.0
    lo = 0.0
    for s in (1.0, 1.0 - 1e-6, 1.0 - 1e-4, 1.0 - 1e-3, 0.99, 0.97, 0.9, 0.7, 0.5):
        if _circle_family_ok(domain, coeffs, s, fine_angles):
            lo = s
            break
        hi = s
    if lo in (0.0, 1.0):
        return lo
    # refine between the last failing rung and the first passing one
    while hi - lo > 2e-4:
        mid = 0.5 * (hi + lo)
        if _circle_family_ok(domain, coeffs, mid, fine_angles):
            lo = mid
        else:
            hi = mid
    return lo


def _circle_family_ok(domain: DomainDescriptor, coeffs: np.ndarray, s: float, fine_angles: int) -> bool:
    theta = 2 * np.pi * np.arange(fine_angles) / fine_angles
    ring = np.exp(1j * theta)
    degree = coeffs.shape[0] - 1
    jj = np.arange(degree + 1)

    def ring_margins(rho: float) -> np.ndarray:
        z = rho * ring
        imgs = (z[:, None] ** jj) @ coeffs
        return domain.signed_dist(imgs), imgs

    dtheta = 2 * np.pi / fine_angles
    if _is_psh_kind(domain):
        margins, imgs = ring_margins(s)
        cushion = 0.5 * _deriv_bound(coeffs, s) * s * dtheta
        if not np.all(margins > cushion):
            return False
        if isinstance(domain, Annulus):
            # inner wall: no zeros inside (argument principle on the ring)
            # makes min |f| attained on the ring itself
            vals = imgs[:, 0]
            if np.min(np.abs(vals)) <= domain.inner + cushion:
                return False
            angles = np.angle(vals[np.r_[1:fine_angles, 0]] / vals)
            if int(np.rint(np.sum(angles) / (2 * np.pi))) != 0:
                return False
        return True

    # sampled kinds: radial family of circles with radial + angular cushions
    n_rings = 24
    lip = _deriv_bound(coeffs, s)
    radial_cushion = lip * s / (2 * n_rings)
    for k in range(1, n_rings + 1):
        rho = s * k / n_rings
        margins, _ = ring_margins(rho)
        cushion = 0.5 * _deriv_bound(coeffs, rho) * rho * dtheta + radial_cushion
        if not np.all(margins > cushion):
            return False
    return True


def _push_first_coeff(domain: DomainDescriptor, coeffs: np.ndarray, u: np.ndarray, d0: float) -> np.ndarray:
    """Greedy enlargement of a_1 along u while certification still passes."""
    best = coeffs
    for step in (0.2, 0.08, 0.03, 0.01, 0.004, 0.0015, 0.0005):
        while True:
            trial = best.copy()
            trial[1] = trial[1] + step * d0 * u
            if _circle_family_ok(domain, trial, 1.0, 2048):
                best = trial
            else:
                break
    return best


def seed_affine_disc(domain: DomainDescriptor, p, v, margin: float = 1e-3) -> PolyDiscCandidate:
    """The always-admissible affine candidate f(z) = p + z * u * t0.

    t0 = dist_to_complement(p) * (1 - margin); every image point lies within
    t0 of p, so the disc cannot reach the complement.
    """
    pt = as_point_array(p, domain.dim)
    vec = as_point_array(v, domain.dim)
    d0 = dist_to_complement(domain, pt)
    u = vec / np.linalg.norm(vec)
    coeffs = np.stack([pt, (1.0 - margin) * d0 * u])
    return PolyDiscCandidate(1, coeffs, 64)


# ---------------------------------------------------------------------------
# the estimator


def _canonical_phase(u: np.ndarray) -> complex:
    k = int(np.argmax(np.abs(u)))
    return u[k] / abs(u[k])


def _penalized_search(
    domain: DomainDescriptor,
    pt: np.ndarray,
    u0: np.ndarray,
    degree: int,
    start: np.ndarray,
    budget: OptimizerBudget,
    d0: float,
) -> np.ndarray:
    """Nelder-Mead over [t, Re/Im higher coeffs]; returns best coeffs array."""
    n = pt.shape[0]
    n_ang = budget.boundary_angles
    theta = 2 * np.pi * np.arange(n_ang) / n_ang
    zs = np.concatenate([rho * np.exp(1j * theta) for rho in _SEARCH_RADII])
    jj = np.arange(degree + 1)
    zpow = zs[:, None] ** jj
    margin_abs = budget.margin * d0

    def unpack(x: np.ndarray) -> np.ndarray:
        coeffs = np.zeros((degree + 1, n), dtype=complex)
        coeffs[0] = pt
        coeffs[1] = max(x[0], 1e-9 * d0) * u0
        if degree >= 2:
            rest = x[1:].reshape(degree - 1, 2 * n)
            coeffs[2:] = rest[:, 0::2] + 1j * rest[:, 1::2]
        return coeffs

    def objective(x: np.ndarray) -> float:
        # sampled feasibility only; the certificate re-checks with cushions
        # on a finer grid and rescales, so the penalty just needs to guide
        coeffs = unpack(x)
        imgs = zpow @ coeffs
        margins = domain.signed_dist(imgs)
        viol = np.maximum(0.0, margin_abs - margins) / d0
        return -x[0] / d0 + 1e4 * float(np.sum(viol**2))

    options = {
        "maxiter": budget.max_iters,
        "maxfev": 2 * budget.max_iters,
        "xatol": 1e-7 * d0,
        "fatol": 1e-10,
        "adaptive": True,
    }
    res = minimize(objective, start, method="Nelder-Mead", options=options)
    return unpack(res.x)


def _mobius_rows(alpha: complex, degree: int) -> np.ndarray:
    """Taylor rows of (z + alpha)/(1 + conj(alpha) z) on the unit disc."""
    out = np.zeros(degree + 1, dtype=complex)
    out[0] = alpha
    fac = 1.0 - abs(alpha) ** 2
    for j in range(1, degree + 1):
        out[j] = fac
        fac *= -np.conj(alpha)
    return out


def _structured_seeds(domain: DomainDescriptor, pt: np.ndarray, u0: np.ndarray, degree: int) -> list[np.ndarray]:
    """Truncated extremal-disc ansatz for the model geometries.

    These are warm starts only; every candidate is still certified by the
    sampled circle family before its derivative is believed.
    """
    seeds: list[np.ndarray] = []
    n = pt.shape[0]
    if isinstance(domain, Disc):
        alpha = (pt[0] - domain.center) / domain.radius
        rows = domain.radius * _mobius_rows(complex(alpha), degree)
        rows[0] = pt[0]
        seeds.append(rows[:, None])
    elif isinstance(domain, Ball):
        center = np.asarray(domain.center, dtype=complex)
        zh = (pt - center) / domain.radius
        ct = complex(np.vdot(zh, u0))
        rs = float(np.sqrt(max(1.0 - float(np.linalg.norm(zh)) ** 2 + abs(ct) ** 2, 1e-300)))
        beta = np.conj(ct) / rs
        mu = rs * _mobius_rows(beta, degree)
        mu[0] = 0.0
        coeffs = domain.radius * mu[:, None] * u0[None, :]
        coeffs[0] = pt
        seeds.append(coeffs)
    elif isinstance(domain, Polydisc):
        radii = np.asarray(domain.radii, dtype=float)
        alphas = pt / radii
        speed = np.abs(u0) > 1e-15
        caps = radii[speed] * (1.0 - np.abs(alphas[speed]) ** 2) / np.abs(u0[speed])
        t_max = float(np.min(caps))
        lam = np.where(speed, t_max * u0 / (radii * (1.0 - np.abs(alphas) ** 2)), 0.0)
        coeffs = np.zeros((degree + 1, n), dtype=complex)
        coeffs[0] = pt
        for i in range(n):
            rows = radii[i] * _mobius_rows(complex(alphas[i]), degree)
            jj = np.arange(1, degree + 1)
            coeffs[1:, i] = rows[1:] * lam[i] ** jj
        seeds.append(coeffs)
    elif isinstance(domain, Annulus):
        # truncated universal cover exp(i c log((1+w)/(1-w))) through p
        mid = float(np.sqrt(domain.inner * domain.outer))
        c = 2.0 * np.log(np.sqrt(domain.outer / domain.inner)) / np.pi
        p_hat = complex(pt[0]) / mid
        w0 = np.tanh(np.log(p_hat) / (2j * c))
        if abs(w0) < 1.0 - 1e-9:
            kap_w0 = np.exp(1j * c * (np.log(1 + w0) - np.log(1 - w0)))
            deriv = mid * kap_w0 * 1j * c * 2 / (1 - w0**2) * (1 - abs(w0) ** 2)
            rot = np.conj(deriv) / abs(deriv) * u0[0]
            n_fft = 512
            r0 = 0.75
            w = r0 * np.exp(2j * np.pi * np.arange(n_fft) / n_fft)
            zeta = (rot * w + w0) / (1 + np.conj(w0) * rot * w)
            vals = mid * np.exp(1j * c * (np.log(1 + zeta) - np.log(1 - zeta)))
            rows = (np.fft.fft(vals) / n_fft)[: degree + 1] / r0 ** np.arange(degree + 1)
            rows[0] = pt[0]
            # the cover has branch points on the unit circle, so its Taylor
            # tail decays slowly; shrunk copies give nearly-feasible starts
            for sig in (0.9, 1.0, 0.75):
                sh = rows * sig ** np.arange(degree + 1)
                sh[0] = pt[0]
                seeds.append(sh[:, None])
    return seeds


def _continuation_coeffs(coeffs: np.ndarray, degree: int) -> np.ndarray | None:
    """Extend a coefficient array one or more degrees by geometric continuation.

    Extremal discs of smooth domains have geometrically decaying Taylor
    coefficients, so continuing the top ratio is a strong warm start.
    """
    have = coeffs.shape[0] - 1
    if have < 2 or degree <= have:
        return None
    top, prev = coeffs[have], coeffs[have - 1]
    safe = np.abs(prev) > 1e-12
    g = np.where(safe, top / np.where(safe, prev, 1.0), 0.0)
    mag = np.abs(g)
    g = np.where(mag > 0.95, g * (0.95 / np.where(mag > 0, mag, 1.0)), g)
    out = np.zeros((degree + 1, coeffs.shape[1]), dtype=complex)
    out[: have + 1] = coeffs
    for j in range(have + 1, degree + 1):
        out[j] = out[j - 1] * g
    return out


def _pack_start(coeffs: np.ndarray, degree: int, n: int) -> np.ndarray:
    x = np.zeros(1 + 2 * n * (degree - 1))
    x[0] = np.linalg.norm(coeffs[1])
    have = coeffs.shape[0] - 1
    for j in range(2, min(degree, have) + 1):
        row = coeffs[j]
        base = 1 + (j - 2) * 2 * n
        x[base : base + 2 * n : 2] = row.real
        x[base + 1 : base + 2 * n : 2] = row.imag
    return x


def _polydisc_estimate(
    domain: Polydisc, pt: np.ndarray, vec: np.ndarray, vnorm: float, budget: OptimizerBudget
) -> tuple[MetricValue, PolyDiscCandidate]:
    """Product reduction: per-coordinate disc problems solved independently.

    A polynomial disc maps into a polydisc iff each coordinate maps into its
    factor, so the joint optimum assembles from one-variable optima with real
    input rescalings to equalize the derivative.
    """
    radii = np.asarray(domain.radii, dtype=float)
    n = pt.shape[0]
    sub: dict[int, np.ndarray] = {}
    tau = np.inf
    for i in range(n):
        if abs(vec[i]) <= 1e-15 * vnorm:
            continue
        _, cand = estimate_kob_royden_candidate(Disc(0.0, radii[i]), [pt[i]], [vec[i]], budget)
        rows = cand.coeffs[:, 0]
        sub[i] = rows
        tau = min(tau, float(np.abs(rows[1])) / abs(vec[i]))
    degree = max(rows.shape[0] - 1 for rows in sub.values())
    coeffs = np.zeros((degree + 1, n), dtype=complex)
    coeffs[0] = pt
    jj = np.arange(1, degree + 1)
    for i, rows in sub.items():
        lam = tau * abs(vec[i]) / float(np.abs(rows[1]))
        coeffs[1 : rows.shape[0], i] = rows[1:] * lam ** jj[: rows.shape[0] - 1]
    # containment in a product is coordinate-wise, so certification may use
    # each factor's own cushion; the joint bisection is only a fallback
    per_coord_ok = all(
        _circle_family_ok(Disc(0.0, radii[i]), coeffs[:, i : i + 1], 1.0, 2048) for i in sub
    )
    if not per_coord_ok:
        s = _certify_scale(domain, coeffs)
        if s <= 0:
            raise BudgetError("no certified candidate within the optimization budget")
        coeffs = coeffs * s ** np.arange(degree + 1)[:, None]
        coeffs = _push_first_coeff(domain, coeffs, vec / vnorm, dist_to_complement(domain, pt))
    t = float(np.linalg.norm(coeffs[1]))
    cand = PolyDiscCandidate(degree, coeffs, 2048)
    return MetricValue(vnorm / t, 1.0, ESTIMATED_UPPER_BOUND), cand


def estimate_kob_royden_candidate(
    domain: DomainDescriptor,
    p,
    v,
    budget: OptimizerBudget | None = None,
    warm: Sequence[PolyDiscCandidate] = (),
) -> tuple[MetricValue, PolyDiscCandidate]:
    """Estimate F(p, v) from above; also return the certified witness disc."""
    budget = budget or OptimizerBudget()
    pt = as_point_array(p, domain.dim)
    vec = as_point_array(v, domain.dim)
    vnorm = float(np.linalg.norm(vec))
    if vnorm == 0:
        raise DomainError("direction must be nonzero")
    if not membership(domain, pt):
        raise DomainError("estimation point must be interior")
    d0 = dist_to_complement(domain, pt)
    n = pt.shape[0]
    if isinstance(domain, Polydisc) and n > 1:
        return _polydisc_estimate(domain, pt, vec, vnorm, budget)
    u = vec / vnorm
    phase = _canonical_phase(u)
    u0 = u / phase

    # degree 1 analytically: the affine disc is admissible up to t = d0
    best_t = d0
    best_coeffs = np.stack([pt, d0 * u0])

    seeds = _structured_seeds(domain, pt, u0, budget.max_degree)

    # even-stride rungs keep estimates at caps m and m+2 directly comparable:
    # the smaller cap's rungs are rerun identically inside the larger one
    rungs = sorted(set(range(2, budget.max_degree + 1, 2)) | {budget.max_degree})
    for degree in rungs:
        rng = rng_for("kob-estimate", repr(domain), tuple(np.round(pt, 14)), tuple(np.round(u0, 14)), budget.seed, degree)
        starts = [_pack_start(best_coeffs, degree, n)]
        for sd in seeds:
            starts.append(_pack_start(sd, degree, n))
        cont = _continuation_coeffs(best_coeffs, degree)
        if cont is not None:
            starts.append(_pack_start(cont, degree, n))
        for w in warm:
            if w.coeffs.shape[0] - 1 <= degree and w.coeffs.shape[1] == n:
                starts.append(_pack_start(w.coeffs / phase ** np.arange(w.coeffs.shape[0])[:, None], degree, n))
        for k in range(budget.restarts - len(starts)):
            amp = 0.3 * d0 * 0.6**k
            x0 = starts[0].copy()
            x0[0] *= 1.0 + 0.1 * rng.standard_normal()
            x0[1:] += amp * rng.standard_normal(x0.shape[0] - 1)
            starts.append(x0)

        def run(x0: np.ndarray) -> tuple[float, np.ndarray]:
            coeffs = _penalized_search(domain, pt, u0, degree, x0, budget, d0)
            s = _certify_scale(domain, coeffs)
            if s <= 0:
                return 0.0, coeffs
            scaled = coeffs * s ** np.arange(degree + 1)[:, None]
            scaled = _push_first_coeff(domain, scaled, u0, d0)
            return float(np.linalg.norm(scaled[1])), scaled

        for t_cand, coeffs_cand in pmap(run, starts[: budget.restarts]):
            if t_cand > best_t:
                best_t, best_coeffs = t_cand, coeffs_cand

    if best_t <= 0:
        raise BudgetError("no certified candidate within the optimization budget")

    # report in the caller's phase convention
    jj = np.arange(best_coeffs.shape[0])
    coeffs_out = best_coeffs * phase**jj[:, None]
    n_circles = 1 if _is_psh_kind(domain) else 24
    cand = PolyDiscCandidate(best_coeffs.shape[0] - 1, coeffs_out, n_circles * 2048)
    return MetricValue(vnorm / best_t, 1.0, ESTIMATED_UPPER_BOUND), cand


def estimate_kob_royden(domain: DomainDescriptor, p, v, budget: OptimizerBudget | None = None) -> MetricValue:
    """Certified upper estimate of the Kobayashi-Royden metric at scale 1."""
    mv, _ = estimate_kob_royden_candidate(domain, p, v, budget)
    return mv


# ---------------------------------------------------------------------------
# separation bounds


def kob_directional_min(domain: DomainDescriptor, p) -> float:
    """Certified lower bound on F(p, v) over all unit vectors v.

    Exact for closed-form kinds (the minimizing direction is known); for
    sampled kinds the Schwarz-lemma bound 1/diam applies to every direction.
    """
    pt = as_point_array(p, domain.dim)
    if not membership(domain, pt):
        raise DomainError("point must be interior")
    if isinstance(domain, Disc):
        return kob_royden_closed(domain, pt, np.array([1.0 + 0j])).value
    if isinstance(domain, Annulus):
        return kob_royden_closed(domain, pt, np.array([1.0 + 0j])).value
    if isinstance(domain, Ball):
        z2 = float(np.sum(np.abs((pt - domain.center_array()) / domain.radius) ** 2))
        return 1.0 / (domain.radius * np.sqrt(1.0 - z2))
    if isinstance(domain, Polydisc):
        radii = np.asarray(domain.radii)
        return float(np.min(radii / (radii**2 - np.abs(pt) ** 2)))
    return 1.0 / domain.diameter_bound()


def _metric_upper(domain, pt, vec, budget) -> tuple[float, PolyDiscCandidate | None]:
    if has_closed_form(domain):
        return kob_royden_closed(domain, pt, vec).value, None
    mv, cand = estimate_kob_royden_candidate(domain, pt, vec, budget)
    return mv.value, cand


def _probe_vectors(n: int, probes: int, seed: int) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for i in range(n):
        e = np.zeros(n, dtype=complex)
        e[i] = 1.0
        out.append(e)
        if len(out) >= probes:
            return out
    rng = rng_for("probes", n, probes, seed)
    while len(out) < probes:
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        out.append(w / np.linalg.norm(w))
    return out


def lemma_compare_bound(
    inner: DomainDescriptor,
    outer: DomainDescriptor,
    p,
    probes: int = 4,
    budget: OptimizerBudget | None = None,
) -> MonotonicityReport:
    """Separation bound c = 1/(1 + delta*b) against the observed metric ratio.

    delta is the Euclidean separation of the nested pair, b a certified lower
    bound on the inner metric over unit directions at p.  The observed ratio
    uses closed forms where available and certified estimates otherwise; for
    estimator pairs the outer value reuses the inner witness enlarged by
    delta, the same competitor that proves the bound.
    """
    pt = as_point_array(p, inner.dim)
    if not membership(inner, pt):
        raise DomainError("probe point must lie in the inner domain")
    delta = domain_separation(inner, outer)
    b = kob_directional_min(inner, pt)
    c_bound = 1.0 / (1.0 + delta * b)

    ratio = 0.0
    for vec in _probe_vectors(inner.dim, probes, budget.seed if budget else 0):
        f_in, cand = _metric_upper(inner, pt, vec, budget)
        if has_closed_form(outer):
            f_out = kob_royden_closed(outer, pt, vec).value
        elif cand is not None:
            f_out = _enlarged_value(outer, cand, delta, np.linalg.norm(vec))
        else:
            f_out = _metric_upper(outer, pt, vec, budget)[0]
        ratio = max(ratio, f_out / f_in)
    return MonotonicityReport(delta, b, c_bound, ratio)


def _enlarged_value(outer: DomainDescriptor, cand: PolyDiscCandidate, delta: float, vnorm: float) -> float:
    """Upper bound on the outer metric from an inner witness disc.

    Adding delta' * z * u to an inner-admissible disc keeps every image point
    within delta' of the inner domain, hence inside the outer one.
    """
    coeffs = cand.coeffs.copy()
    t = np.linalg.norm(coeffs[1])
    u = coeffs[1] / t
    coeffs[1] = coeffs[1] + (1.0 - 1e-9) * delta * u
    return float(vnorm / np.linalg.norm(coeffs[1]))


def uniform_monotonicity_constant(
    inner: DomainDescriptor,
    outer: DomainDescriptor,
    sample_points: int = 6,
    probes: int = 3,
    budget: OptimizerBudget | None = None,
) -> float:
    """Uniform c < 1 with F_outer <= c * F_inner on the inner domain."""
    return uniform_monotonicity_report(inner, outer, sample_points, probes, budget)["c"]


def uniform_monotonicity_report(
    inner: DomainDescriptor,
    outer: DomainDescriptor,
    sample_points: int = 6,
    probes: int = 3,
    budget: OptimizerBudget | None = None,
    extra_points=None,
) -> dict:
    """Sampled uniform-comparison constant plus the evidence behind it.

    The analytic sandwich: inflating the inner domain's distance field by
    delta/2 gives an intermediate domain W with separation delta/2 on each
    side, so c <= 1/(1 + (delta/2)/diam) < 1 holds uniformly; the returned c
    is the (sharper) maximum of sampled certified ratios, clamped below 1.
    extra_points join the random sample; callers use this to pin the ratio
    at points that matter (a fixed point's local ratio bounds the asymptotic
    contraction rate there, so it must not be left to chance).
    """
    delta = domain_separation(inner, outer)
    rng = rng_for("uniform-monotonicity", repr(inner), repr(outer), sample_points)
    pts = inner.sample_interior(sample_points, rng, margin=0.05 * delta)
    if extra_points is not None:
        extra = np.stack([as_point_array(p, inner.dim) for p in extra_points])
        if np.any(inner.signed_dist(extra) <= 0):
            raise DomainError("extra probe points must lie in the inner domain")
        pts = np.concatenate([extra, pts], axis=0)
    diam_w = inner.diameter_bound() + delta
    c_sandwich = 1.0 / (1.0 + 0.5 * delta / diam_w)

    ratios: list[float] = []
    for pt in pts:
        for vec in _probe_vectors(inner.dim, probes, budget.seed if budget else 0):
            if not membership(outer, pt):
                raise DomainError("inner sample escaped the outer domain; pair is not nested")
            f_in, cand = _metric_upper(inner, pt, vec, budget)
            if has_closed_form(outer):
                f_out = kob_royden_closed(outer, pt, vec).value
            elif cand is not None:
                f_out = _enlarged_value(outer, cand, delta, np.linalg.norm(vec))
            else:
                f_out = _metric_upper(outer, pt, vec, budget)[0]
            ratios.append(f_out / f_in)
    c_obs = max(ratios)
    c = c_obs if c_obs < 1.0 else c_sandwich
    c = min(c, 1.0 - 1e-12)
    return {
        "c": float(c),
        "delta": float(delta),
        "c_sandwich": float(c_sandwich),
        "ratios": [float(r) for r in ratios],
        "n_points": int(len(pts)),
    }
