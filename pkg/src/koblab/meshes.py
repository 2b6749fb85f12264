"""Oriented meshes on S^1 and S^2 carrying an image point per vertex.

A SphereMeshMap is the discrete trace of a continuous map from the unit
sphere into C^n: parameter vertices on S^k, simplices (edges for k=1,
triangles for k=2), and one image point per vertex.  Degree computations and
Hausdorff measures treat the image as affine on each simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class SphereMeshMap:
    k: int
    vertices: np.ndarray  # (V, k+1) real, unit rows
    simplices: np.ndarray  # (F, k+1) int
    images: np.ndarray  # (V, n) complex

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=float)
        simp = np.asarray(self.simplices, dtype=int)
        imgs = np.asarray(self.images, dtype=complex)
        if imgs.ndim == 1:
            imgs = imgs[:, None]
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "simplices", simp)
        object.__setattr__(self, "images", imgs)
        if self.k not in (1, 2):
            raise DomainError("mesh k must be 1 or 2")
        if verts.ndim != 2 or verts.shape[1] != self.k + 1:
            raise DomainError("vertices must have shape (V, k+1)")
        if simp.ndim != 2 or simp.shape[1] != self.k + 1:
            raise DomainError("simplices must have shape (F, k+1)")
        if simp.min(initial=0) < 0 or simp.max(initial=-1) >= verts.shape[0]:
            raise DomainError("simplex vertex index out of range")
        if imgs.ndim != 2 or imgs.shape[0] != verts.shape[0]:
            raise DomainError("one image point per vertex required")
        norms = np.linalg.norm(verts, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            raise DomainError("mesh vertices must lie on the unit sphere")

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_simplices(self) -> int:
        return self.simplices.shape[0]

    @property
    def image_dim(self) -> int:
        return self.images.shape[1]

    def with_images(self, fn: Callable[[np.ndarray], np.ndarray]) -> "SphereMeshMap":
        """Replace images by fn applied to the parameter vertices."""
        imgs = np.asarray(fn(self.vertices), dtype=complex)
        if imgs.ndim == 1:
            imgs = imgs[:, None]
        return SphereMeshMap(self.k, self.vertices, self.simplices, imgs)

    def audit(self) -> dict:
        """Structural checks: Euler characteristic and coherent orientation.

        For k=1 the edges must chain into one cycle; for k=2 every edge must
        be shared by exactly two triangles traversed in opposite directions.
        """
        simp = self.simplices
        if self.k == 1:
            degree = np.zeros(self.n_vertices, dtype=int)
            for a, b in simp:
                degree[a] += 1
                degree[b] += 1
            ok = bool(np.all(degree == 2) and self.n_vertices == self.n_simplices)
            return {"euler_char": self.n_vertices - self.n_simplices, "oriented": ok}
        edge_count: dict[tuple[int, int], int] = {}
        oriented = True
        for tri in simp:
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                key = (min(a, b), max(a, b))
                edge_count[key] = edge_count.get(key, 0) + (1 if a < b else -1)
        for signed in edge_count.values():
            if signed != 0:
                oriented = False
        n_edges = len(edge_count)
        euler = self.n_vertices - n_edges + self.n_simplices
        return {"euler_char": euler, "oriented": oriented and euler == 2}


# ---------------------------------------------------------------------------
# constructors


def circle_mesh(segments: int, image_fn: Callable[[np.ndarray], np.ndarray] | None = None) -> SphereMeshMap:
    """Regular polygon mesh on S^1; default images embed into the z-plane."""
    if segments < 3:
        raise DomainError("circle mesh needs at least 3 segments")
    theta = 2 * np.pi * np.arange(segments) / segments
    verts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    simp = np.stack([np.arange(segments), (np.arange(segments) + 1) % segments], axis=1)
    if image_fn is None:
        imgs = (verts[:, 0] + 1j * verts[:, 1])[:, None]
    else:
        imgs = np.asarray(image_fn(verts), dtype=complex)
        if imgs.ndim == 1:
            imgs = imgs[:, None]
    return SphereMeshMap(1, verts, simp, imgs)


_ICO_T = (1.0 + np.sqrt(5.0)) / 2.0
_ICO_VERTS = np.array(
    [
        (-1, _ICO_T, 0), (1, _ICO_T, 0), (-1, -_ICO_T, 0), (1, -_ICO_T, 0),
        (0, -1, _ICO_T), (0, 1, _ICO_T), (0, -1, -_ICO_T), (0, 1, -_ICO_T),
        (_ICO_T, 0, -1), (_ICO_T, 0, 1), (-_ICO_T, 0, -1), (-_ICO_T, 0, 1),
    ],
    dtype=float,
)
_ICO_FACES = np.array(
    [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ],
    dtype=int,
)


def icosphere(subdivisions: int = 1, image_fn: Callable[[np.ndarray], np.ndarray] | None = None) -> SphereMeshMap:
    """Icosahedron-based triangulation of S^2, outward-oriented.

    Each subdivision splits every triangle at edge midpoints (deduplicated)
    and reprojects new vertices to the sphere.  Default images are the real
    embedding of the vertices into C^3.
    """
    if subdivisions < 0:
        raise DomainError("subdivisions must be >= 0")
    verts = _ICO_VERTS / np.linalg.norm(_ICO_VERTS, axis=1, keepdims=True)
    faces = _ICO_FACES.copy()
    for _ in range(subdivisions):
        verts, faces = _subdivide_once(verts, faces)
    if image_fn is None:
        imgs = verts.astype(complex)
    else:
        imgs = np.asarray(image_fn(verts), dtype=complex)
        if imgs.ndim == 1:
            imgs = imgs[:, None]
    return SphereMeshMap(2, verts, faces, imgs)


def _subdivide_once(verts: np.ndarray, faces: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    vlist = list(verts)
    midpoint: dict[tuple[int, int], int] = {}

    def mid(a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        idx = midpoint.get(key)
        if idx is None:
            m = vlist[a] + vlist[b]
            m /= np.linalg.norm(m)
            vlist.append(m)
            idx = len(vlist) - 1
            midpoint[key] = idx
        return idx

    new_faces = []
    for a, b, c in faces:
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        new_faces.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
    return np.asarray(vlist), np.asarray(new_faces, dtype=int)


def real_embedding(verts: np.ndarray) -> np.ndarray:
    """Embed real sphere vertices into C^{k+1} with zero imaginary part."""
    return verts.astype(complex)


def tube_circle_core(n: int, segments: int = 64) -> SphereMeshMap:
    """Equatorial core circle of a TubeCircle(n, r): t -> (e^{it}, 0, ..., 0)."""

    def images(verts: np.ndarray) -> np.ndarray:
        z1 = verts[:, 0] + 1j * verts[:, 1]
        out = np.zeros((verts.shape[0], n), dtype=complex)
        out[:, 0] = z1
        return out

    return circle_mesh(segments, images)


def sphere_core(k: int, subdivisions: int = 2, segments: int = 64, radius: float = 1.0) -> SphereMeshMap:
    """Core-sphere inclusion S^k -> C^{k+1}, optionally scaled radially."""

    def images(verts: np.ndarray) -> np.ndarray:
        return (radius * verts).astype(complex)

    if k == 1:
        return circle_mesh(segments, images)
    if k == 2:
        return icosphere(subdivisions, images)
    raise DomainError("sphere cores support k in {1, 2}")
