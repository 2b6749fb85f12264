"""Domain descriptors: membership, distances to the complement, sampling, JSON."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import koblab as kl


class TestDiscDomain:
    def test_membership(self):
        d = kl.Disc(1 + 0j, 2.0)
        assert kl.membership(d, 1.0)
        assert kl.membership(d, 2.9)
        assert not kl.membership(d, 3.1)

    def test_dist_to_complement(self):
        d = kl.Disc(0, 1.0)
        assert kl.dist_to_complement(d, 0.0) == pytest.approx(1.0)
        assert kl.dist_to_complement(d, 0.3) == pytest.approx(0.7)

    def test_invalid_radius(self):
        with pytest.raises(kl.DomainError):
            kl.Disc(0, -1.0)


class TestBallDomain:
    def test_dist_to_complement(self):
        b = kl.Ball(2, radius=1.0)
        assert kl.dist_to_complement(b, (0.3, 0.4j)) == pytest.approx(0.5)

    def test_membership_boundary(self):
        b = kl.Ball(3)
        assert kl.membership(b, (0.5, 0.5, 0.5))
        assert not kl.membership(b, (1.0, 0, 0))

    @given(st.floats(0.0, 0.99))
    @settings(max_examples=30)
    def test_radial_distance(self, t):
        b = kl.Ball(2)
        assert kl.dist_to_complement(b, (t, 0)) == pytest.approx(1 - t, abs=1e-12)


class TestPolydiscDomain:
    def test_dist_is_min_over_factors(self):
        pd = kl.Polydisc((1.0, 2.0))
        assert kl.dist_to_complement(pd, (0.5, 0.0)) == pytest.approx(0.5)
        assert kl.dist_to_complement(pd, (0.0, 1.5)) == pytest.approx(0.5)

    def test_membership(self):
        pd = kl.Polydisc((1.0, 2.0))
        assert kl.membership(pd, (0.9, 1.9))
        assert not kl.membership(pd, (1.1, 0.0))


class TestAnnulusDomain:
    def test_membership_and_distance(self):
        a = kl.Annulus(1.0, 4.0)
        assert kl.membership(a, 2.0)
        assert not kl.membership(a, 0.5)
        assert not kl.membership(a, 5.0)
        assert kl.dist_to_complement(a, 2.0) == pytest.approx(1.0)
        assert kl.dist_to_complement(a, 3.5) == pytest.approx(0.5)

    def test_invalid_order(self):
        with pytest.raises(kl.DomainError):
            kl.Annulus(4.0, 1.0)


class TestTubeDomains:
    def test_tube_circle_distance_to_core(self):
        t = kl.TubeCircle(2, 0.3)
        # nearest core point to (1.2, 0.1) is (1, 0): sqrt(0.04 + 0.01)
        assert kl.membership(t, (1.2, 0.1))
        assert kl.dist_to_complement(t, (1.2, 0.1)) == pytest.approx(0.3 - np.sqrt(0.05), rel=1e-9)
        assert not kl.membership(t, (1.4, 0.0))

    def test_tube_circle_rotation_symmetry(self):
        t = kl.TubeCircle(2, 0.25)
        for ang in (0.0, 1.1, 2.7):
            p = (1.1 * np.exp(1j * ang), 0.05)
            assert kl.dist_to_complement(t, p) == pytest.approx(
                kl.dist_to_complement(t, (1.1, 0.05)), rel=1e-9
            )

    def test_tube_sphere_distance_to_core(self):
        t = kl.TubeSphere(1, 0.2)
        assert kl.membership(t, (1.1, 0.0))
        assert kl.dist_to_complement(t, (1.1, 0.0)) == pytest.approx(0.1, rel=1e-6)
        assert not kl.membership(t, (1.3, 0.0))

    def test_tube_sphere_imaginary_offset(self):
        t = kl.TubeSphere(1, 0.2)
        # (1, 0.1i) sits 0.1 off the real sphere in the imaginary direction
        assert kl.dist_to_complement(t, (1.0, 0.1j)) == pytest.approx(0.1, rel=1e-6)

    def test_nesting(self):
        inner, outer = kl.TubeSphere(1, 0.2), kl.TubeSphere(1, 0.4)
        sep = kl.domain_separation(inner, outer)
        assert 0.15 < sep <= 0.2 + 1e-9


class TestGenericDomain:
    def _disc_like(self):
        fn = lambda pts: 1.0 - np.abs(pts[:, 0])
        bbox = np.array([[-1.0, 1.0], [-1.0, 1.0]])  # re and im rows of the one coordinate
        return kl.Generic(fn, bbox, label="disc-like")

    def test_membership_and_sampling(self):
        g = self._disc_like()
        assert kl.membership(g, 0.5)
        assert not kl.membership(g, 1.5)
        pts = g.sample_interior(64, kl.rng_for("test-generic"))
        assert np.all(g.signed_dist(pts) > 0)

    def test_boundary_points_near_zero_level(self):
        g = self._disc_like()
        bpts = g.boundary_points(128, kl.rng_for("test-generic-b"))
        assert np.all(np.abs(np.abs(bpts[:, 0]) - 1.0) < 1e-6)

    def test_no_json_form(self):
        with pytest.raises(kl.ConfigError):
            self._disc_like().to_json()

    def test_repr_is_stable(self):
        g = self._disc_like()
        assert repr(g) == repr(self._disc_like())
        assert "disc-like" in repr(g)


class TestSeparationOracles:
    def test_concentric_discs(self):
        assert kl.domain_separation(kl.Disc(0, 1), kl.Disc(0, 2)) == pytest.approx(1.0, rel=1e-6)

    def test_concentric_balls(self):
        assert kl.domain_separation(kl.Ball(2, radius=1.0), kl.Ball(2, radius=1.25)) == pytest.approx(
            0.25, rel=1e-6
        )

    def test_polydisc_pair(self):
        assert kl.domain_separation(
            kl.Polydisc((1.0, 1.0)), kl.Polydisc((1.5, 2.0))
        ) == pytest.approx(0.5, rel=1e-6)

    def test_non_nested_raises(self):
        with pytest.raises(kl.DomainError):
            kl.domain_separation(kl.Disc(0, 2), kl.Disc(0, 1))


class TestSerialization:
    @pytest.mark.parametrize(
        "dom",
        [
            kl.Disc(0.5 + 0.25j, 2.0),
            kl.Ball(3, radius=1.5),
            kl.Polydisc((1.0, 2.0, 0.5)),
            kl.Annulus(0.5, 3.0),
            kl.TubeCircle(2, 0.3),
            kl.TubeSphere(2, 0.15),
        ],
    )
    def test_round_trip(self, dom):
        data = dom.to_json()
        back = kl.domain_from_json(data)
        assert type(back) is type(dom)
        assert repr(back) == repr(dom)

    def test_unknown_kind(self):
        with pytest.raises(kl.ConfigError):
            kl.domain_from_json({"kind": "torus"})


class TestSampling:
    @pytest.mark.parametrize(
        "dom",
        [kl.Disc(0, 1), kl.Ball(2), kl.Polydisc((1.0, 2.0)), kl.Annulus(1.0, 3.0), kl.TubeCircle(2, 0.3)],
    )
    def test_interior_samples_are_interior(self, dom):
        pts = dom.sample_interior(256, kl.rng_for("test-sampling", repr(dom)))
        assert pts.shape == (256, dom.dim)
        assert np.all(dom.signed_dist(pts) > 0)

    def test_deterministic_given_same_key(self):
        d = kl.Disc(0, 1)
        a = d.sample_interior(32, kl.rng_for("k", 1))
        b = d.sample_interior(32, kl.rng_for("k", 1))
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize("dom", [kl.Disc(0, 1), kl.Ball(2), kl.Annulus(1.0, 3.0)])
    def test_boundary_points_on_wall(self, dom):
        bpts = dom.boundary_points(64, kl.rng_for("test-wall", repr(dom)))
        assert np.all(np.abs(dom.signed_dist(bpts)) < 1e-7)


class TestCurveHelpers:
    def _circle(self, radius: float, n: int = 64) -> kl.SampledCurve:
        t = np.linspace(0, 2 * np.pi, n + 1)  # closed curves repeat the endpoint
        pts = tuple(kl.CPoint((complex(radius * np.exp(1j * a)),)) for a in t)
        return kl.SampledCurve(tuple(t), pts, closed=True)

    def test_curve_in_domain(self):
        a = kl.Annulus(0.5, 2.0)
        assert kl.curve_in_domain(a, self._circle(1.0))
        assert not kl.curve_in_domain(a, self._circle(0.4))

    def test_open_curve_membership(self):
        seg = kl.SampledCurve((0.0, 1.0), (kl.CPoint((0j,)), kl.CPoint((0.5 + 0j,))))
        assert kl.curve_in_domain(kl.Disc(), seg)
