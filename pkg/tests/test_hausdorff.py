"""Cover-sum measures, pair distances, and the flat-area calibration."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

import koblab as kl

ARTANH_HALF = 0.5493061443340549
PI_SQ = np.pi**2


def circle_curve(radius: float, n: int = 128, center: complex = 0.0) -> kl.SampledCurve:
    t = np.linspace(0, 2 * np.pi, n + 1)
    pts = tuple(kl.CPoint((complex(center + radius * np.exp(1j * a)),)) for a in t)
    return kl.SampledCurve(tuple(t), pts, closed=True)


def segment_curve(a: complex, b: complex, n: int = 64) -> kl.SampledCurve:
    t = np.linspace(0.0, 1.0, n + 1)
    pts = tuple(kl.CPoint((complex(a + (b - a) * s),)) for s in t)
    return kl.SampledCurve(tuple(t), pts)


class TestPairDistance:
    def test_euclidean_when_no_domain(self):
        assert kl.pair_distance(None, (0.0,), (3 + 4j,)) == pytest.approx(5.0)

    def test_disc_radial(self):
        assert kl.pair_distance(kl.Disc(), (0.0,), (0.5,)) == pytest.approx(ARTANH_HALF, rel=1e-12)
        assert kl.pair_distance(kl.Disc(), (0.0,), (0.5,), scale=2.0) == pytest.approx(
            2 * ARTANH_HALF, rel=1e-12
        )

    def test_ball_matches_disc_slice(self):
        d = kl.pair_distance(kl.Ball(2), (0.1, 0.0), (0.6, 0.0))
        assert d == pytest.approx(kl.pair_distance(kl.Disc(), (0.1,), (0.6,)), rel=1e-12)

    def test_annulus_core_antipodes(self):
        # half the core circle at the canonical scale-2 length pi^2
        m = kl.Annulus(np.exp(-0.5), np.exp(0.5))
        d = kl.pair_distance(m, (1.0,), (-1.0,), scale=2.0)
        assert d == pytest.approx(PI_SQ / 2, rel=1e-9)

    def test_annulus_radial_pair_against_quadrature(self):
        m = kl.Annulus(np.exp(-0.5), np.exp(0.5))
        oracle, _ = quad(lambda r: kl.annulus_canonical_density(r, np.e, scale=2.0), 1.0, 1.2)
        d = kl.pair_distance(m, (1.0,), (1.2,), scale=2.0)
        assert d == pytest.approx(oracle, rel=1e-9)

    def test_batch_matches_scalar(self):
        d = kl.Disc()
        xs = np.array([[0.0], [0.1 + 0.1j]], dtype=complex)
        ys = np.array([[0.5], [0.3 - 0.2j]], dtype=complex)
        batch = kl.pair_distance_batch(d, xs, ys)
        for i in range(2):
            assert batch[i] == pytest.approx(kl.pair_distance(d, xs[i], ys[i]), rel=1e-12)


class TestCurveMeasure:
    def test_core_circle_in_annulus(self):
        m = kl.Annulus(np.exp(-0.5), np.exp(0.5))
        rep = kl.hausdorff_k_measure(circle_curve(1.0), 1, domain=m, scale=2.0)
        assert rep.k == 1
        assert rep.value == pytest.approx(PI_SQ, rel=0.02)
        assert rep.monotone

    def test_segment_in_disc(self):
        rep = kl.hausdorff_k_measure(segment_curve(0.0, 0.5), 1, domain=kl.Disc())
        assert rep.value == pytest.approx(ARTANH_HALF, rel=0.02)

    def test_circle_in_disc_perimeter(self):
        rep = kl.hausdorff_k_measure(circle_curve(0.3), 1, domain=kl.Disc())
        assert rep.value == pytest.approx(2 * np.pi * 0.3 / 0.91, rel=0.02)

    def test_euclidean_polyline_is_exact_at_every_level(self):
        # chordal pieces split into chords, so every ladder rung is the length
        pts = np.array([0.0, 1.0, 1.0 + 1.0j, 2.0 + 0.5j])
        curve = kl.SampledCurve(tuple(range(4)), tuple(kl.CPoint((p,)) for p in pts))
        total = float(np.abs(np.diff(pts)).sum())
        rep = kl.hausdorff_k_measure(curve, 1)
        for est in rep.estimates:
            assert est.value == pytest.approx(total, rel=1e-9)

    def test_single_point_curve_measures_zero(self):
        curve = kl.SampledCurve((0.0, 1.0), (kl.CPoint((0.2j,)), kl.CPoint((0.2j,))))
        rep = kl.hausdorff_k_measure(curve, 1, domain=kl.Disc())
        assert rep.value == 0.0

    def test_piece_budget(self):
        with pytest.raises(kl.BudgetError):
            kl.hausdorff_k_measure(circle_curve(0.5), 1, domain=kl.Disc(), levels=12, max_pieces=64)

    @given(
        st.lists(
            st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False),
            min_size=2,
            max_size=8,
        )
    )
    @settings(max_examples=40, deadline=None)
    def test_ladder_never_decreases(self, zs):
        curve = kl.SampledCurve(tuple(range(len(zs))), tuple(kl.CPoint((z,)) for z in zs))
        rep = kl.hausdorff_k_measure(curve, 1, levels=4)
        vals = [e.value for e in rep.estimates]
        for lo, hi in zip(vals, vals[1:]):
            assert hi >= lo - 1e-9 * max(1.0, abs(lo))


class TestMeshMeasure:
    def _equilateral(self) -> kl.SphereMeshMap:
        verts = np.eye(3)
        simp = np.array([[0, 1, 2]])
        images = np.array([[0.0], [1.0], [np.exp(1j * np.pi / 3)]])
        return kl.SphereMeshMap(2, verts, simp, images)

    def test_single_pass_native_resolution(self):
        m = kl.icosphere(3)
        est = kl.sphere_map_measure_upper(m, k=2)
        assert est.n_pieces == m.n_simplices
        assert est.value > 0

    def test_flat_triangle_value_is_longest_edge_squared(self):
        est = kl.sphere_map_measure_upper(self._equilateral(), k=2)
        assert est.n_pieces == 1
        assert est.value == pytest.approx(1.0, rel=1e-12)

    def test_forced_refinement_preserves_flat_sum(self):
        # midpoint splits keep children similar, so sum(diam^2) is unchanged
        est = kl.sphere_map_measure_upper(self._equilateral(), k=2, epsilon=0.3)
        assert est.n_pieces > 1
        assert est.value == pytest.approx(1.0, rel=1e-9)

    def test_constant_mesh_measures_zero(self):
        m = kl.icosphere(2, image_fn=lambda V: np.ones_like(V))
        assert kl.sphere_map_measure_upper(m, k=2).value == 0.0

    def test_equilateral_calibration_constant(self):
        assert kl.flat_calibration(self._equilateral()) == pytest.approx(
            kl.EQUILATERAL_CALIBRATION, rel=1e-12
        )
        assert kl.calibrated_area(1.0) == pytest.approx(np.sqrt(3) / 4, rel=1e-12)

    def test_identity_sphere_area(self):
        m = kl.icosphere(3)
        est = kl.sphere_map_measure_upper(m, k=2)
        area = kl.calibrated_area(est.value, m)
        assert area == pytest.approx(4 * np.pi, rel=0.03)

    def test_scaled_sphere_area(self):
        m = kl.icosphere(3, image_fn=lambda V: 0.3 * V)
        est = kl.sphere_map_measure_upper(m, k=2)
        assert kl.calibrated_area(est.value, m) == pytest.approx(4 * np.pi * 0.09, rel=0.03)

    def test_refinement_converges_toward_round_area(self):
        areas = []
        for sub in (2, 3, 4):
            m = kl.icosphere(sub)
            areas.append(kl.calibrated_area(kl.sphere_map_measure_upper(m, k=2).value, m))
        target = 4 * np.pi
        errs = [abs(a - target) for a in areas]
        assert errs[0] > errs[1] > errs[2]

    def test_calibration_needs_triangles(self):
        with pytest.raises(kl.ConfigError):
            kl.flat_calibration(kl.circle_mesh(8))
