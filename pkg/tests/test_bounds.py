import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcrb.bounds import (
    BoundCurve,
    CurveKind,
    InvalidRange,
    boundary_samples,
    l0_grid,
    point_allowed,
    region_from_bundle,
    transition_scan,
)
from qcrb.closed_forms import ScenarioKey, closed_fisher, delta_g
from qcrb.fock import PhysicalConstants
from qcrb.qfi import OrderingCase
from qcrb.states import thermal_params_from, thermal_params_from_kappas

MODEL1_TH = ScenarioKey("canonical", "thermal")


@pytest.fixture(scope="module")
def fig2_region():
    return region_from_bundle(
        closed_fisher(MODEL1_TH, PhysicalConstants(1.0), thermal_params_from_kappas(1.0, 0.5))
    )


@pytest.fixture(scope="module")
def coherent_region():
    return region_from_bundle(closed_fisher(ScenarioKey("mechanical", "pure"), PhysicalConstants(1.0)))


def on_hyperbola(curve, v11, v22):
    return (v11 - curve.g11) * (v22 - curve.g22) - curve.im_g12**2


class TestRegionGeometry:
    def test_fig2_region(self, fig2_region):
        r = fig2_region
        assert (r.sld.g11, r.sld.g22) == pytest.approx((3.75, 3.75), abs=1e-14)
        assert r.rld.kind is CurveKind.RLD_HYPERBOLA
        assert (r.rld.g11, r.rld.im_g12) == pytest.approx((3.5, 0.5), abs=1e-14)
        assert r.delta_v_rs == pytest.approx(0.75, abs=1e-12)
        assert len(r.intersections) == 2
        assert np.allclose(r.intersections, [(4.5, 3.75), (3.75, 4.5)], atol=1e-10)

    def test_intersections_lie_on_both_curves(self, fig2_region):
        for v11, v22 in fig2_region.intersections:
            assert abs(on_hyperbola(fig2_region.rld, v11, v22)) < 1e-10
            assert min(abs(v11 - 3.75), abs(v22 - 3.75)) < 1e-10

    def test_coherent_region(self, coherent_region):
        r = coherent_region
        assert (r.sld.g11, r.sld.g22) == pytest.approx((0.5, 0.5))
        assert (r.rld.g11, r.rld.g22, r.rld.im_g12) == pytest.approx((0.5, 0.5, 0.5))
        assert r.intersections == [] and r.delta_v_rs is None

    def test_equal_kappas_give_lines(self):
        b = closed_fisher(MODEL1_TH, PhysicalConstants(1.0), thermal_params_from_kappas(0.5, 0.5))
        r = region_from_bundle(b)
        assert r.rld.kind is CurveKind.SLD_LINES
        assert r.intersections == []
        # SLD quadrant alone decides
        assert point_allowed(r, r.sld.g11, r.sld.g22)
        assert not point_allowed(r, r.sld.g11 - 1e-9, 100.0)

    def test_scaled_units(self, fig2_region):
        scaled = fig2_region.scaled(0.5)
        assert scaled.intersections[0] == pytest.approx((2.25, 1.875))
        assert scaled.rld.im_g12 == pytest.approx(0.25)


class TestPointAllowed:
    def test_coherent_points(self, coherent_region):
        assert not point_allowed(coherent_region, 0.5, 0.5)
        assert point_allowed(coherent_region, 1.0, 1.0)

    def test_fig2_points(self, fig2_region):
        assert not point_allowed(fig2_region, 3.8, 3.8)
        assert point_allowed(fig2_region, 4.5, 3.75)
        assert not point_allowed(fig2_region, 4.4, 3.75)

    def test_below_sld_line(self, fig2_region, coherent_region):
        for r in (fig2_region, coherent_region):
            assert not point_allowed(r, r.sld.g11 - 1e-12, 1e6)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0, 20), st.floats(0, 20), st.floats(0, 5), st.floats(0, 5))
    def test_symmetric_and_upward_closed(self, v11, v22, d1, d2):
        for r in (
            region_from_bundle(
                closed_fisher(MODEL1_TH, PhysicalConstants(1.0), thermal_params_from_kappas(1.0, 0.5))
            ),
            region_from_bundle(closed_fisher(ScenarioKey("mechanical", "pure"), PhysicalConstants(1.0))),
        ):
            assert point_allowed(r, v11, v22) == point_allowed(r, v22, v11)
            if point_allowed(r, v11, v22):
                assert point_allowed(r, v11 + d1, v22 + d2)


class TestBoundarySamples:
    def test_coherent_three_points(self, coherent_region):
        s = boundary_samples(coherent_region, 2.5, 3)
        assert np.allclose(s["rld"], [(0.625, 2.5), (1.0, 1.0), (2.5, 0.625)], atol=1e-14)
        assert s["sld_vertical"][0] == (0.5, 0.5) and s["sld_vertical"][-1] == (0.5, 2.5)
        assert all(len(v) == 3 for v in s.values())

    def test_two_points_are_endpoints(self, fig2_region):
        s = boundary_samples(fig2_region, 6.0, 2)
        assert np.allclose(s["rld"], [(3.75, 4.5), (4.5, 3.75)], atol=1e-12)
        assert s["sld_horizontal"] == [(3.75, 3.75), (6.0, 3.75)]

    def test_fig2_curve_crosses_at_intersection(self, fig2_region):
        pts = boundary_samples(fig2_region, 6.0, 101)["rld"]
        v11 = [p[0] for p in pts if abs(p[1] - 3.75) < 1e-12]
        assert v11 and abs(v11[0] - 4.5) < 1e-12
        for p in pts:
            assert abs(on_hyperbola(fig2_region.rld, *p)) < 1e-12
            assert p[0] >= 3.75 - 1e-12 and p[1] >= 3.75 - 1e-12

    def test_invalid_ranges(self, fig2_region):
        with pytest.raises(InvalidRange):
            boundary_samples(fig2_region, 3.75, 10)
        with pytest.raises(InvalidRange):
            boundary_samples(fig2_region, 5.0, 1)

    def test_degenerate_rld_samples_as_lines(self):
        r = region_from_bundle(
            closed_fisher(MODEL1_TH, PhysicalConstants(1.0), thermal_params_from_kappas(0.5, 0.5))
        )
        s = boundary_samples(r, 4.0, 5)
        assert "rld" not in s and len(s["rld_vertical"]) == 5


def test_curve_satisfied_is_closed():
    c = BoundCurve(1.0, 2.0, 0.5, CurveKind.RLD_HYPERBOLA)
    assert c.satisfied(1.5, 2.5)
    assert not c.satisfied(0.5, 1.5)
    assert BoundCurve(1.0, 2.0).satisfied(1.0, 2.0)


class TestTransition:
    def test_grid(self):
        g = l0_grid(-4, 4, 0.05)
        assert len(g) == 161
        assert 0.5 in g and -0.5 in g
        with pytest.raises(InvalidRange):
            l0_grid(1, 0, 0.1)

    def test_examples(self):
        c = PhysicalConstants(1.0)
        (half,) = transition_scan(1.0, [0.5], c, lam_units=False)
        assert abs(half.delta_v_rs) < 1e-12
        (zero,) = transition_scan(1.0, [0.0], c, lam_units=False)
        assert zero.delta_v_rs == pytest.approx(-zero.delta_g) and zero.delta_v_rs < 0
        (fig2,) = transition_scan(math.log(3), [1.0], c, lam_units=False)
        assert fig2.delta_v_rs == pytest.approx(0.75, abs=1e-12)
        (scaled,) = transition_scan(math.log(3), [1.0], c)
        assert scaled.delta_v_rs == pytest.approx(0.375, abs=1e-12)

    @pytest.mark.parametrize("bw", [0.1, 1.0, 5.0])
    def test_sign_matches_ordering(self, bw):
        c = PhysicalConstants(1.0)
        for row in transition_scan(bw, l0_grid(-4, 4, 0.05), c):
            if abs(abs(row.L0) - 0.5) < 1e-12:
                assert row.delta_v_rs == 0.0
                assert row.ordering_case is OrderingCase.SLD_DOMINATES
            elif row.delta_v_rs > 0:
                assert row.ordering_case is OrderingCase.NO_ORDERING
            else:
                assert row.ordering_case is OrderingCase.SLD_DOMINATES

    def test_psd_flip_at_half(self):
        c = PhysicalConstants(1.0)
        for L0, psd in ((0.49, True), (0.5, True), (0.51, False), (-0.51, False), (-0.5, True)):
            p = thermal_params_from(L0, 1.0)
            b = closed_fisher(MODEL1_TH, c, p)
            eig = np.linalg.eigvalsh(b.g_s_inv - b.g_r_inv)
            dg = delta_g(c, p)
            assert np.allclose(sorted(eig), [dg * (1 - 2 * abs(L0)), dg * (1 + 2 * abs(L0))], atol=1e-12)
            assert (eig[0] >= -1e-12) == psd
