"""Zero-section geometry: second fundamental form, stability, calibration."""
import math
from fractions import Fraction as F

import numpy as np
import pytest

from ahgeom.ode import sample_from_series
from ahgeom.series import expand
from ahgeom.zero_section import (calibration_check, second_fundamental_form,
                                 stability_operator, zero_section_area)


class TestSecondFundamentalForm:
    def test_component_list(self):
        h = second_fundamental_form(1.0).h
        assert h[(0, 2, 2)] == -0.5
        assert h[(0, 3, 3)] == 0.5
        assert h[(1, 2, 3)] == 0.5 and h[(1, 3, 2)] == 0.5
        for idx in ((0, 2, 3), (0, 3, 2), (1, 2, 2), (1, 3, 3)):
            assert h[idx] == 0.0

    @pytest.mark.parametrize("m", [0.5, 1.0, 2.0, 10.0])
    def test_minimal_but_not_totally_geodesic(self, m):
        sff = second_fundamental_form(m)
        assert sff.mean_curvature_trace(0) == 0.0
        assert sff.mean_curvature_trace(1) == 0.0
        assert sff.norm_squared == pytest.approx(1.0 / m ** 2, rel=1e-15)

    def test_consistency_with_connection_limit(self):
        # -h022 = 1/(2m) must match the limit of -b'/b; h123 matches the
        # limit of (a^2 + c^2 - b^2)/(2abc)
        m = 1.0
        s = sample_from_series(expand(m, 12), 1e-6)
        sff = second_fundamental_form(m)
        assert -sff.h[(0, 2, 2)] == pytest.approx(-s.db / s.b, abs=1e-5)
        w31 = (s.a ** 2 + s.c ** 2 - s.b ** 2) / (2 * s.a * s.b * s.c)
        assert sff.h[(1, 2, 3)] == pytest.approx(-w31, abs=1e-5)


class TestStabilityOperator:
    @pytest.mark.parametrize("m", [0.5, 1.0, 2.0, 10.0])
    def test_identity_over_m_squared(self, m):
        s = stability_operator(m)
        assert np.max(np.abs(s - np.eye(2) / m ** 2)) <= 1e-12 / m ** 2
        assert np.all(np.linalg.eigvalsh(s) > 0)

    def test_assembly_arithmetic(self):
        # 2 * (3/(4m^2)) - 2 * (1/(2m))^2 = 1/m^2, in exact rationals
        m = F(3)
        assert 2 * (F(3, 4) / m ** 2) - 2 * (F(1, 2) / m) ** 2 == 1 / m ** 2


class TestCalibration:
    def test_bc_at_zero_exact(self, profile1):
        s = profile1.at(0.0)
        assert s.b * s.c == -1.0

    def test_bound_and_monotonicity(self, profile1, grid1):
        cal = calibration_check(profile1, [0.0] + grid1)
        assert cal.bound_holds
        assert cal.monotone
        assert cal.strict_after_zero
        assert cal.min_abs_bc == pytest.approx(1.0, abs=1e-12)
        assert cal.worst_excess <= 0.0

    def test_negative_control_flipped_sign(self, profile1, grid1):
        from dataclasses import replace
        from ahgeom.ode import MetricProfile
        flipped = tuple(replace(s, b=-s.b) for s in profile1.samples)
        bad = MetricProfile(params=profile1.params, bootstrap=profile1.bootstrap,
                            r0=profile1.r0, samples=flipped)
        cal = calibration_check(bad, grid1[100::200])
        assert not cal.bound_holds

    def test_small_r_expansion_coefficient(self):
        # bc = -m^2 - r^2/2 + O(r^4): the quadratic coefficient is exactly
        # -1/2 from (p^2 - q^2)/4 with p = r + ..., q = 2m + 3r^2/(4m) + ...
        s = expand(1.0, 8)
        bc2 = (s.unit_p[1] ** 2 - 2 * s.unit_q[0] * s.unit_q[2]) / 4
        assert bc2 == F(-1, 2)
        # same for the even-order parity: bc is even in r
        bc1 = (0 - 2 * s.unit_q[0] * 0) / 4
        assert bc1 == 0

    def test_numeric_expansion_matches(self, profile1):
        for r in (1e-3, 5e-3):
            s = profile1.at(r)
            assert s.b * s.c == pytest.approx(-1.0 - 0.5 * r * r, abs=r ** 4)


class TestArea:
    def test_round_sphere(self):
        assert zero_section_area(1.0) == pytest.approx(4 * math.pi, rel=1e-15)
        assert zero_section_area(2.0) == pytest.approx(16 * math.pi, rel=1e-15)

    def test_calibrating_form_reproduces_area(self):
        # the calibrating two-form restricts to the area form of the round
        # sphere of radius m, so its integral is m^2 * (unit sphere area)
        m = 3.0
        unit_sphere_area = 4 * math.pi
        assert zero_section_area(m) == pytest.approx(m ** 2 * unit_sphere_area,
                                                     rel=1e-15)

    def test_validation(self):
        with pytest.raises(ValueError):
            zero_section_area(0.0)
