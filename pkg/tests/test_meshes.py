"""Sphere meshes: construction, subdivision, validation, core factories."""

import numpy as np
import pytest

import koblab as kl


class TestCircleMesh:
    def test_counts_and_defaults(self):
        m = kl.circle_mesh(8)
        assert m.k == 1
        assert m.n_vertices == 8 and m.n_simplices == 8
        # default image is the unit circle in one complex coordinate
        np.testing.assert_allclose(np.abs(m.images[:, 0]), 1.0, atol=1e-12)

    def test_image_fn_receives_vertices(self):
        seen = {}

        def fn(verts):
            seen["shape"] = verts.shape
            return verts[:, 0] + 1j * verts[:, 1]

        kl.circle_mesh(12, image_fn=fn)
        assert seen["shape"] == (12, 2)

    def test_too_few_segments(self):
        with pytest.raises(kl.DomainError):
            kl.circle_mesh(2)

    def test_audit_passes(self):
        kl.circle_mesh(16).audit()


class TestIcosphere:
    @pytest.mark.parametrize("sub,verts,faces", [(0, 12, 20), (1, 42, 80), (2, 162, 320)])
    def test_subdivision_counts(self, sub, verts, faces):
        m = kl.icosphere(sub)
        assert (m.n_vertices, m.n_simplices) == (verts, faces)

    def test_vertices_on_unit_sphere(self):
        m = kl.icosphere(2)
        np.testing.assert_allclose(np.linalg.norm(m.vertices, axis=1), 1.0, atol=1e-12)

    def test_audit_passes(self):
        kl.icosphere(1).audit()

    def test_image_fn_applied(self):
        m = kl.icosphere(1, image_fn=lambda V: 0.5 * V)
        np.testing.assert_allclose(np.abs(m.images).max(), 0.5, atol=1e-12)


class TestValidation:
    def test_bad_k(self):
        with pytest.raises(kl.DomainError):
            kl.SphereMeshMap(3, np.eye(4), np.array([[0, 1, 2, 3]]), np.eye(4, dtype=complex))

    def test_off_sphere_vertices(self):
        verts = np.array([[2.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
        simp = np.array([[0, 1], [1, 2], [2, 0]])
        with pytest.raises(kl.DomainError):
            kl.SphereMeshMap(1, verts, simp, verts[:, :1].astype(complex))

    def test_index_out_of_range(self):
        verts = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
        simp = np.array([[0, 1], [1, 5], [2, 0]])
        with pytest.raises(kl.DomainError):
            kl.SphereMeshMap(1, verts, simp, verts[:, :1].astype(complex))

    def test_images_must_be_one_point_per_vertex(self):
        m = kl.circle_mesh(8)
        with pytest.raises(kl.DomainError):
            kl.SphereMeshMap(1, m.vertices, m.simplices, np.ones((8, 2, 2)))
        with pytest.raises(kl.DomainError):
            kl.SphereMeshMap(1, m.vertices, m.simplices, np.ones((7, 1)))


class TestCores:
    def test_tube_circle_core_lives_on_core(self):
        core = kl.tube_circle_core(2, segments=32)
        assert core.images.shape == (32, 2)
        np.testing.assert_allclose(np.abs(core.images[:, 0]), 1.0, atol=1e-12)
        np.testing.assert_allclose(core.images[:, 1], 0.0, atol=1e-12)

    def test_tube_circle_core_inside_tube(self):
        core = kl.tube_circle_core(3, segments=16)
        t = kl.TubeCircle(3, 0.1)
        assert np.all(t.signed_dist(core.images) > 0)

    def test_sphere_core_real_embedding(self):
        core = kl.sphere_core(2, subdivisions=1)
        # images are the real unit sphere inside C^3
        np.testing.assert_allclose(np.abs(core.images.imag).max(), 0.0, atol=1e-12)
        np.testing.assert_allclose(np.linalg.norm(core.images.real, axis=1), 1.0, atol=1e-12)

    def test_sphere_core_radius(self):
        core = kl.sphere_core(1, segments=32, radius=0.5)
        np.testing.assert_allclose(np.linalg.norm(core.images.real, axis=1), 0.5, atol=1e-12)

    def test_real_embedding_shape(self):
        verts = kl.icosphere(0).vertices
        emb = kl.real_embedding(verts)
        assert emb.dtype == complex
        np.testing.assert_allclose(emb.real, verts, atol=1e-15)
        np.testing.assert_allclose(emb.imag, 0.0, atol=1e-15)
