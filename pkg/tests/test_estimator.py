"""Upper-bound estimator and the nested-domain comparison machinery."""

import numpy as np
import pytest

import koblab as kl

LIGHT = kl.OptimizerBudget(max_degree=4, restarts=2, max_iters=300, boundary_angles=128)


class TestEstimatorSoundness:
    """The analytic-disc search always yields an upper bound for the metric."""

    CASES = [
        (kl.Disc(0, 1), 0.0, 1.0),
        (kl.Disc(0, 1), 0.4 + 0.2j, 1.0 - 0.5j),
        (kl.Ball(2), (0.3, 0.0), (1.0, 0.0)),
        (kl.Ball(2), (0.1, 0.2j), (0.5, 0.5)),
        (kl.Polydisc((1.0, 2.0)), (0.5, 1j), (1.0, 1.0)),
    ]

    @pytest.mark.parametrize("domain,p,v", CASES)
    def test_upper_bound_and_tightness(self, domain, p, v):
        closed = kl.kob_royden_closed(domain, p, v).value
        est = kl.estimate_kob_royden(domain, p, v, budget=LIGHT)
        assert est.source == kl.ESTIMATED_UPPER_BOUND
        assert est.value >= closed - 1e-9
        assert est.value <= 1.10 * closed

    def test_disc_center_is_exact(self):
        # the identity disc is admissible, so the bound closes completely
        est = kl.estimate_kob_royden(kl.Disc(0, 1), 0.0, 1.0, budget=LIGHT)
        assert est.value == pytest.approx(1.0, abs=1e-6)

    def test_annulus_sound_side(self):
        a = kl.Annulus(1.0, 4.0)
        closed = kl.kob_royden_closed(a, 2.0, 1.0).value
        est = kl.estimate_kob_royden(a, 2.0, 1.0, budget=LIGHT)
        assert closed - 1e-9 <= est.value <= 3.0 * closed

    def test_exterior_point_rejected(self):
        with pytest.raises(kl.DomainError):
            kl.estimate_kob_royden(kl.Disc(0, 1), 1.5, 1.0, budget=LIGHT)

    def test_candidate_reuse_does_not_hurt(self):
        d = kl.Disc(0, 1)
        v1, cand = kl.estimate_kob_royden_candidate(d, 0.3, 1.0, budget=LIGHT)
        v2, _ = kl.estimate_kob_royden_candidate(d, 0.3, 1.0, budget=LIGHT, warm=[cand])
        assert v2.value <= v1.value + 1e-12

    def test_seed_disc_is_admissible_bound(self):
        d = kl.Ball(2)
        closed = kl.kob_royden_closed(d, (0.2, 0.1), (1.0, 0.5)).value
        seed = kl.seed_affine_disc(d, (0.2, 0.1), (1.0, 0.5))
        assert seed.degree == 1
        # an affine candidate can only overestimate
        est = kl.estimate_kob_royden(d, (0.2, 0.1), (1.0, 0.5), budget=kl.OptimizerBudget(max_degree=1, restarts=1, max_iters=0))
        assert est.value >= closed - 1e-9


class TestDirectionalFloor:
    def test_unit_disc_center(self):
        assert kl.kob_directional_min(kl.Disc(0, 1), 0.0) == pytest.approx(1.0, rel=1e-9)

    def test_larger_disc_scales_inverse(self):
        assert kl.kob_directional_min(kl.Disc(0, 2), 0.0) == pytest.approx(0.5, rel=1e-9)

    def test_ball_center(self):
        assert kl.kob_directional_min(kl.Ball(2), (0, 0)) == pytest.approx(1.0, rel=1e-9)


class TestLemmaCompareBound:
    def test_concentric_discs_exact(self):
        rep = kl.lemma_compare_bound(kl.Disc(0, 1), kl.Disc(0, 2), 0.0)
        assert rep.c_bound == pytest.approx(0.5, abs=1e-9)
        assert rep.observed_ratio == pytest.approx(rep.c_bound, abs=1e-6)
        assert rep.delta == pytest.approx(1.0, rel=1e-6)
        assert rep.b_lower == pytest.approx(1.0, rel=1e-6)

    def test_concentric_balls_exact(self):
        rep = kl.lemma_compare_bound(kl.Ball(2, radius=1.0), kl.Ball(2, radius=1.25), (0, 0))
        assert rep.c_bound == pytest.approx(0.8, abs=1e-9)
        assert rep.observed_ratio == pytest.approx(0.8, abs=1e-6)

    def test_off_center_bound_still_valid(self):
        rep = kl.lemma_compare_bound(kl.Disc(0, 1), kl.Disc(0, 2), 0.5)
        assert 0 < rep.c_bound < 1
        assert rep.observed_ratio <= rep.c_bound + 1e-9


class TestUniformMonotonicity:
    def test_report_shape_and_contraction(self):
        rep = kl.uniform_monotonicity_report(
            kl.Disc(0, 1), kl.Disc(0, 2), sample_points=4, probes=2, budget=LIGHT
        )
        assert set(rep) == {"c", "c_sandwich", "delta", "n_points", "ratios"}
        assert 0 < rep["c"] < 1
        assert all(r < 1 for r in rep["ratios"])
        assert rep["delta"] == pytest.approx(1.0, rel=1e-6)

    def test_extra_points_are_probed(self):
        rep = kl.uniform_monotonicity_report(
            kl.Disc(0, 1), kl.Disc(0, 2), sample_points=2, probes=2, budget=LIGHT,
            extra_points=[0.0],
        )
        assert rep["n_points"] == 3
        # the center pins the exact worst ratio 1/2 into the sample
        assert rep["c"] >= 0.5 - 1e-6

    def test_extra_point_outside_inner_rejected(self):
        with pytest.raises(kl.DomainError):
            kl.uniform_monotonicity_report(
                kl.Disc(0, 1), kl.Disc(0, 2), sample_points=2, budget=LIGHT, extra_points=[1.5]
            )

    def test_constant_helper_matches_report(self):
        c = kl.uniform_monotonicity_constant(kl.Disc(0, 1), kl.Disc(0, 2), sample_points=3, probes=2, budget=LIGHT)
        rep = kl.uniform_monotonicity_report(kl.Disc(0, 1), kl.Disc(0, 2), sample_points=3, probes=2, budget=LIGHT)
        assert c == rep["c"]

    def test_tube_pair_contracts(self):
        rep = kl.uniform_monotonicity_report(
            kl.TubeSphere(1, 0.2), kl.TubeSphere(1, 0.4), sample_points=2, probes=2,
            budget=kl.OptimizerBudget(max_degree=1, restarts=1, max_iters=0, boundary_angles=64),
        )
        assert 0 < rep["c"] < 1
