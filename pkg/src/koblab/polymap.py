"""Polynomial maps between complex coordinate spaces.

A map is a finite sum of terms c * z^alpha with multi-index alpha over the
input variables and coefficient vector c in the output space.  Supports
vectorized evaluation, exact composition (with a size guard), iteration, and
a JSON wire format: {"n_in", "n_out", "terms": [{"idx": [...], "coef":
[[re, im], ...]}]}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

_MAX_TERMS = 20000


def _clean(terms: dict[tuple[int, ...], np.ndarray], n_out: int, tol: float = 0.0) -> dict:
    out = {}
    for idx, coef in terms.items():
        c = np.asarray(coef, dtype=complex).reshape(n_out)
        if np.any(np.abs(c) > tol):
            out[tuple(int(i) for i in idx)] = c
    return out


@dataclass(frozen=True)
class PolyMap:
    """Finite polynomial map from C^n_in to C^n_out."""

    n_in: int
    n_out: int
    terms: tuple[tuple[tuple[int, ...], tuple[complex, ...]], ...]

    def __post_init__(self):
        if self.n_in < 1 or self.n_out < 1:
            raise ConfigError("n_in and n_out must be positive")
        for idx, coef in self.terms:
            if len(idx) != self.n_in or any(i < 0 for i in idx):
                raise ConfigError(f"bad multi-index {idx}")
            if len(coef) != self.n_out:
                raise ConfigError("coefficient length must equal n_out")

    @classmethod
    def from_terms(cls, n_in: int, n_out: int, terms: dict) -> "PolyMap":
        cleaned = _clean(terms, n_out)
        ordered = tuple(
            (idx, tuple(complex(c) for c in cleaned[idx])) for idx in sorted(cleaned)
        )
        return cls(n_in, n_out, ordered)

    @classmethod
    def from_univariate(cls, coeffs) -> "PolyMap":
        """One-variable map from ascending coefficients."""
        cs = np.asarray(coeffs, dtype=complex)
        return cls.from_terms(1, 1, {(j,): cs[j : j + 1] for j in range(len(cs))})

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        terms = {}
        for i in range(n):
            idx = tuple(1 if j == i else 0 for j in range(n))
            c = np.zeros(n, dtype=complex)
            c[i] = 1.0
            terms[idx] = c
        return cls.from_terms(n, n, terms)

    @property
    def algebraic_degree(self) -> int:
        return max((sum(idx) for idx, _ in self.terms), default=0)

    def term_dict(self) -> dict[tuple[int, ...], np.ndarray]:
        return {idx: np.array(coef, dtype=complex) for idx, coef in self.terms}

    def __call__(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=complex)
        scalar_in = self.n_in == 1 and (pts.ndim == 0 or pts.shape[-1] != self.n_in)
        if scalar_in:
            pts = pts[..., None]
        if pts.shape[-1] != self.n_in:
            raise ConfigError(f"expected points with {self.n_in} coordinates")
        out = np.zeros(pts.shape[:-1] + (self.n_out,), dtype=complex)
        for idx, coef in self.terms:
            mono = np.ones(pts.shape[:-1], dtype=complex)
            for i, e in enumerate(idx):
                if e:
                    mono = mono * pts[..., i] ** e
            out += mono[..., None] * np.array(coef)
        return out

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """Exact substitution self(inner(z))."""
        if inner.n_out != self.n_in:
            raise ConfigError("composition shape mismatch")
        comp_terms: dict[tuple[int, ...], np.ndarray] = {}
        # scalar polynomials for each inner component
        comps = [
            {idx: coef[i] for idx, coef in inner.term_dict().items() if coef[i] != 0}
            for i in range(inner.n_out)
        ]
        pow_cache: dict[tuple[int, int], dict] = {}

        def comp_power(i: int, e: int) -> dict:
            if e == 0:
                return {tuple([0] * inner.n_in): 1.0 + 0j}
            if (i, e) in pow_cache:
                return pow_cache[(i, e)]
            prev = comp_power(i, e - 1)
            cur: dict[tuple[int, ...], complex] = {}
            for ia, ca in prev.items():
                for ib, cb in comps[i].items():
                    key = tuple(a + b for a, b in zip(ia, ib))
                    cur[key] = cur.get(key, 0.0 + 0j) + ca * cb
            if len(cur) > _MAX_TERMS:
                raise ConfigError("composition exceeds the term budget")
            pow_cache[(i, e)] = cur
            return cur

        for idx, coef in self.terms:
            mono: dict[tuple[int, ...], complex] = {tuple([0] * inner.n_in): 1.0 + 0j}
            for i, e in enumerate(idx):
                if not e:
                    continue
                factor = comp_power(i, e)
                nxt: dict[tuple[int, ...], complex] = {}
                for ia, ca in mono.items():
                    for ib, cb in factor.items():
                        key = tuple(a + b for a, b in zip(ia, ib))
                        nxt[key] = nxt.get(key, 0.0 + 0j) + ca * cb
                mono = nxt
                if len(mono) > _MAX_TERMS:
                    raise ConfigError("composition exceeds the term budget")
            cvec = np.array(coef)
            for im, cm in mono.items():
                comp_terms[im] = comp_terms.get(im, np.zeros(self.n_out, dtype=complex)) + cm * cvec
        return PolyMap.from_terms(inner.n_in, self.n_out, comp_terms)

    def iterate(self, times: int) -> "PolyMap":
        if self.n_in != self.n_out:
            raise ConfigError("iteration needs a self-map")
        if times < 1:
            raise ConfigError("times must be >= 1")
        out = self
        for _ in range(times - 1):
            out = self.compose(out)
        return out

    def evaluate_iterated(self, pts, times: int) -> np.ndarray:
        """f applied `times` times by repeated evaluation (no blowup)."""
        if self.n_in != self.n_out:
            raise ConfigError("iteration needs a self-map")
        out = np.asarray(pts, dtype=complex)
        for _ in range(times):
            out = self(out)
        return out

    def to_json(self) -> dict:
        return {
            "n_in": self.n_in,
            "n_out": self.n_out,
            "terms": [
                {"idx": list(idx), "coef": [[c.real, c.imag] for c in coef]}
                for idx, coef in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyMap":
        try:
            n_in = int(data["n_in"])
            n_out = int(data["n_out"])
            terms = {}
            for t in data["terms"]:
                idx = tuple(int(i) for i in t["idx"])
                coef = np.array([complex(re, im) for re, im in t["coef"]])
                terms[idx] = terms.get(idx, 0) + coef
            return cls.from_terms(n_in, n_out, terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed polynomial map: {exc}") from exc
