"""Lattice-graph distances and density-integrated curve lengths."""

import numpy as np
import pytest

import koblab as kl

ARTANH_HALF = 0.5493061443340549
PI_SQ = np.pi**2


class TestGraphDistance:
    def test_disc_radial_two_percent(self):
        d = kl.kob_distance_graph(kl.Disc(0, 1), 0.0, 0.5, lattice_step=0.02)
        assert d == pytest.approx(ARTANH_HALF, rel=0.02)

    def test_ball_radial_three_percent(self):
        d = kl.kob_distance_graph(kl.Ball(2), (0, 0), (0.5, 0), lattice_step=0.05)
        assert d == pytest.approx(ARTANH_HALF, rel=0.03)

    def test_coincident_points(self):
        assert kl.kob_distance_graph(kl.Disc(0, 1), 0.3, 0.3, lattice_step=0.05) == 0.0

    def test_symmetry(self):
        d1 = kl.kob_distance_graph(kl.Disc(0, 1), 0.1, 0.5j, lattice_step=0.05)
        d2 = kl.kob_distance_graph(kl.Disc(0, 1), 0.5j, 0.1, lattice_step=0.05)
        assert d1 == pytest.approx(d2, abs=1e-12)

    def test_scale_linearity(self):
        d1 = kl.kob_distance_graph(kl.Disc(0, 1), 0.0, 0.5, lattice_step=0.05)
        d2 = kl.kob_distance_graph(kl.Disc(0, 1), 0.0, 0.5, lattice_step=0.05, scale=2.0)
        assert d2 == pytest.approx(2 * d1, rel=1e-9)

    def test_exterior_endpoint_rejected(self):
        with pytest.raises(kl.DomainError):
            kl.kob_distance_graph(kl.Disc(0, 1), 0.0, 1.5, lattice_step=0.05)


class TestDistancesFrom:
    def test_tracks_closed_form(self):
        # direct integrated source edges give sub-lattice accuracy
        dom = kl.Disc(0, 1)
        targets = [0.3, 0.5j, -0.2 - 0.1j]
        batch = kl.kob_distances_from(dom, 0.0, targets, lattice_step=0.04)
        assert batch.shape == (3,)
        for t, got in zip(targets, batch):
            assert got == pytest.approx(np.arctanh(abs(t)), rel=0.02)

    def test_node_budget(self):
        with pytest.raises(kl.BudgetError):
            kl.kob_distances_from(kl.Disc(0, 1), 0.0, [0.9], lattice_step=0.001, max_nodes=100)


class TestMetricGraph:
    def test_explicit_graph_agrees(self):
        g = kl.build_metric_graph(kl.Disc(0, 1), 0.0, 0.5, lattice_step=0.05)
        assert g.shortest_distance() == pytest.approx(
            kl.kob_distance_graph(kl.Disc(0, 1), 0.0, 0.5, lattice_step=0.05), rel=1e-12
        )

    def test_weights_nonnegative(self):
        g = kl.build_metric_graph(kl.Disc(0, 1), 0.0, 0.4, lattice_step=0.1)
        assert np.all(g.weights >= 0)
        assert np.sum(g.weights > 0) > len(g.weights) - 4


class TestCurveLength:
    def _circle(self, radius: float, n: int = 256) -> kl.SampledCurve:
        t = np.linspace(0, 2 * np.pi, n + 1)
        pts = tuple(kl.CPoint((complex(radius * np.exp(1j * a)),)) for a in t)
        return kl.SampledCurve(tuple(t), pts, closed=True)

    def test_core_circle_both_modes(self):
        m = kl.Annulus(np.exp(-0.5), np.exp(0.5))
        curve = self._circle(1.0)
        for mode in ("integrated", "partition-sum"):
            length = kl.curve_length_metric(m, curve, mode=mode, scale=2.0)
            assert length == pytest.approx(PI_SQ, rel=0.01)

    def test_disc_diameter_segment(self):
        t = np.linspace(0.0, 1.0, 65)
        seg = kl.SampledCurve(tuple(t), tuple(kl.CPoint((complex(0.5 * s),)) for s in t))
        assert kl.curve_length_metric(kl.Disc(), seg) == pytest.approx(ARTANH_HALF, rel=1e-4)

    def test_curve_outside_domain_rejected(self):
        with pytest.raises(kl.DomainError):
            kl.curve_length_metric(kl.Disc(), self._circle(1.5))

    def test_unknown_mode(self):
        with pytest.raises(kl.ConfigError):
            kl.curve_length_metric(kl.Disc(), self._circle(0.5), mode="chord")
