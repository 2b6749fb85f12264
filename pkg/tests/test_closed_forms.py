"""Closed-form infinitesimal metrics and distances against hand-derived values."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import koblab as kl

ARTANH_HALF = 0.5493061443340549


def unit_disc_points(max_abs: float = 0.95):
    return st.complex_numbers(max_magnitude=max_abs, allow_nan=False, allow_infinity=False)


class TestPoincareDisc:
    def test_base_normalization(self):
        assert kl.poincare_disc_density(0.0, scale=1.0) == 1.0

    def test_curvature_scale_at_half(self):
        assert kl.poincare_disc_density(0.5, scale=2.0) == pytest.approx(8.0 / 3.0, rel=1e-15)

    def test_blows_up_at_boundary(self):
        assert kl.poincare_disc_density(0.999999) > 1e5

    def test_rejects_exterior_point(self):
        with pytest.raises(kl.DomainError):
            kl.poincare_disc_density(1.5)


class TestDiscClosedForm:
    def test_translated_scaled_disc(self):
        # R|v| / (R^2 - |p-c|^2) with R=2, p-c=0.5
        mv = kl.kob_royden_closed(kl.Disc(1 + 1j, 2.0), 1.5 + 1j, 1.0)
        assert mv.value == pytest.approx(2.0 / 3.75, rel=1e-15)
        assert mv.source == kl.CLOSED_FORM

    def test_center_unit(self):
        assert kl.kob_royden_closed(kl.Disc(), 0.0, 1.0).value == 1.0

    @given(p=unit_disc_points(0.9), lam=st.complex_numbers(min_magnitude=1e-3, max_magnitude=10.0, allow_nan=False, allow_infinity=False))
    def test_homogeneous_in_vector(self, p, lam):
        base = kl.kob_royden_closed(kl.Disc(), p, 1.0).value
        scaled = kl.kob_royden_closed(kl.Disc(), p, lam).value
        assert scaled == pytest.approx(abs(lam) * base, rel=1e-12)

    @given(p=unit_disc_points(0.8), a=unit_disc_points(0.8))
    def test_mobius_invariance(self, p, a):
        # disc automorphism (z-a)/(1 - conj(a) z) preserves the metric
        phi = (p - a) / (1 - np.conj(a) * p)
        dphi = (1 - abs(a) ** 2) / (1 - np.conj(a) * p) ** 2
        before = kl.kob_royden_closed(kl.Disc(), p, 1.0).value
        after = kl.kob_royden_closed(kl.Disc(), phi, dphi).value
        assert after == pytest.approx(before, rel=1e-9)


class TestBallClosedForm:
    def test_axis_point_axis_vector(self):
        mv = kl.kob_royden_closed(kl.Ball(2), (0.3, 0), (1, 0))
        assert mv.value == pytest.approx(1.0989010989010988, rel=1e-15)

    def test_generic_point_and_vector(self):
        mv = kl.kob_royden_closed(kl.Ball(2), (0.3, 0.4j), (0.1, 0.2))
        assert mv.value == pytest.approx(0.282213473180223, rel=1e-13)

    def test_center_is_euclidean_norm(self):
        mv = kl.kob_royden_closed(kl.Ball(3), (0, 0, 0), (3, 4j, 0))
        assert mv.value == pytest.approx(5.0, rel=1e-15)

    def test_matches_disc_on_slice(self):
        # the z1-axis slice of the ball carries the disc metric
        for t in (0.1, 0.45, 0.8):
            ball = kl.kob_royden_closed(kl.Ball(2), (t, 0), (1, 0)).value
            disc = kl.kob_royden_closed(kl.Disc(), t, 1.0).value
            assert ball == pytest.approx(disc, rel=1e-14)

    @given(t=st.floats(0.0, 0.9), s=st.floats(0.1, 5.0))
    def test_homogeneous(self, t, s):
        base = kl.kob_royden_closed(kl.Ball(2), (t, 0), (0.3, 0.4)).value
        assert kl.kob_royden_closed(kl.Ball(2), (t, 0), (0.3 * s, 0.4 * s)).value == pytest.approx(
            s * base, rel=1e-12
        )


class TestPolydiscClosedForm:
    def test_max_over_factors(self):
        mv = kl.kob_royden_closed(kl.Polydisc((1.0, 2.0)), (0.5, 1j), (1, 1))
        assert mv.value == pytest.approx(4.0 / 3.0, rel=1e-15)

    def test_single_factor_is_disc(self):
        pd = kl.kob_royden_closed(kl.Polydisc((1.0,)), (0.5,), (1,)).value
        disc = kl.kob_royden_closed(kl.Disc(), 0.5, 1.0).value
        assert pd == disc

    @given(a=st.floats(-0.9, 0.9), b=st.floats(-0.9, 0.9))
    def test_dominates_each_factor(self, a, b):
        val = kl.kob_royden_closed(kl.Polydisc((1.0, 1.0)), (a, b), (1, 1)).value
        f1 = kl.kob_royden_closed(kl.Disc(), a, 1.0).value
        f2 = kl.kob_royden_closed(kl.Disc(), b, 1.0).value
        assert val == pytest.approx(max(f1, f2), rel=1e-14)


class TestAnnulusDensity:
    def test_core_circle_values(self):
        assert kl.annulus_canonical_density(1.0, np.e, scale=2.0) == pytest.approx(np.pi / 2, rel=1e-15)
        assert kl.annulus_canonical_density(1.0, np.e, scale=1.0) == pytest.approx(np.pi / 4, rel=1e-15)

    def test_off_core_value(self):
        # (pi/2) / (r cos(pi ln r / 2)) at r = 1.2, modulus e
        assert kl.annulus_canonical_density(1.2, np.e, scale=2.0) == pytest.approx(
            1.3645762555795153, rel=1e-13
        )

    def test_symmetric_under_inversion(self):
        # r and 1/r are swapped by the annulus symmetry z -> 1/z
        R = 4.0
        d1 = kl.annulus_canonical_density(1.3, R, scale=2.0)
        d2 = kl.annulus_canonical_density(1 / 1.3, R, scale=2.0)
        assert d1 * 1.3 == pytest.approx(d2 / 1.3, rel=1e-12)

    def test_canonical_is_kobayashi_of_doubled_walls(self):
        # the model density with parameter R coincides with the intrinsic
        # scale-1 density of the annulus walled at 1/R and R
        R = 2.0
        for r in (0.75, 0.9, 1.0, 1.3):
            a = kl.annulus_canonical_density(r, R, scale=1.0)
            b = kl.annulus_kobayashi_density(r, 1 / R, R)
            assert a == pytest.approx(b, rel=1e-14)

    def test_kobayashi_density_diverges_at_walls(self):
        assert kl.annulus_kobayashi_density(1.0 + 1e-9, 1.0, 4.0) > 1e6
        assert kl.annulus_kobayashi_density(4.0 - 1e-9, 1.0, 4.0) > 1e6

    def test_densities_reject_exterior_radius(self):
        with pytest.raises(kl.DomainError):
            kl.annulus_canonical_density(0.5, 2.0)
        with pytest.raises(kl.DomainError):
            kl.annulus_kobayashi_density(5.0, 1.0, 4.0)

    @given(lam=st.floats(0.2, 5.0), r=st.floats(1.05, 1.9))
    @settings(max_examples=50)
    def test_scaling_covariance(self, lam, r):
        # z -> lam z maps A(1,2) to A(lam, 2 lam); densities transform by 1/lam
        d1 = kl.annulus_kobayashi_density(r, 1.0, 2.0)
        d2 = kl.annulus_kobayashi_density(lam * r, lam, 2 * lam)
        assert lam * d2 == pytest.approx(d1, rel=1e-10)


class TestClosedDistances:
    def test_disc_radial(self):
        assert kl.kob_distance_closed(kl.Disc(), 0.0, 0.5) == pytest.approx(ARTANH_HALF, rel=1e-15)

    def test_ball_radial(self):
        assert kl.kob_distance_closed(kl.Ball(2), (0, 0), (0.5, 0)) == pytest.approx(
            ARTANH_HALF, rel=1e-15
        )

    @given(p=unit_disc_points(0.8), q=unit_disc_points(0.8))
    def test_symmetry(self, p, q):
        d1 = kl.kob_distance_closed(kl.Disc(), p, q)
        d2 = kl.kob_distance_closed(kl.Disc(), q, p)
        assert d1 == pytest.approx(d2, abs=1e-12)

    @given(p=unit_disc_points(0.7), q=unit_disc_points(0.7), r=unit_disc_points(0.7))
    def test_triangle_inequality(self, p, q, r):
        dpq = kl.kob_distance_closed(kl.Disc(), p, q)
        dpr = kl.kob_distance_closed(kl.Disc(), p, r)
        drq = kl.kob_distance_closed(kl.Disc(), r, q)
        assert dpq <= dpr + drq + 1e-10

    def test_coincident_points(self):
        assert kl.kob_distance_closed(kl.Ball(3), (0.1, 0.2, 0), (0.1, 0.2, 0)) == 0.0

    def test_closed_form_availability_flags(self):
        assert kl.has_closed_form(kl.Disc())
        assert kl.has_closed_form(kl.Ball(2))
        assert kl.has_closed_form(kl.Polydisc((1.0, 2.0)))
        assert kl.has_closed_distance(kl.Disc())
        assert kl.has_closed_distance(kl.Ball(2))
        assert not kl.has_closed_distance(kl.TubeCircle(2, 0.2))
