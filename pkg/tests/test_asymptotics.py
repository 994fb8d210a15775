import math

import pytest
from mpmath import mp

from mb_workbench.asymptotics import (
    Centering,
    F_alpha,
    F_TW,
    action_S,
    critical_point,
    first_log_derivative,
    gumbel_cdf,
    interpolation_argument,
    second_log_derivative,
    third_log_derivative,
    thm1_center,
    thm1_level,
    thm1_limit_params,
    thm2_center,
    thm4_scale,
    tw_constants,
)
from mb_workbench.errors import ParameterError


def _log_derivatives(z: float, v: float, b: float, eta: float, theta: float) -> list[float]:
    """(z d/dz)^k S at z for k = 1, 2, 3 by high-precision numerical differentiation."""
    with mp.workdps(40):

        def s_of_t(t):
            z_ = mp.exp(t)
            return mp.polylog(2, b * z_) / eta - mp.polylog(2, b / z_) / theta - v * t

        t0 = mp.log(z)
        return [float(mp.diff(s_of_t, t0, k)) for k in (1, 2, 3)]


class TestSoftEdgeConstants:
    def test_symmetric_case(self):
        c = tw_constants(0.25)
        assert c.z_c == pytest.approx(1.0)
        assert c.c1 == pytest.approx(2 * math.log(2), rel=1e-14)
        assert c.c2 == pytest.approx(2 ** (1 / 3), rel=1e-14)

    @pytest.mark.parametrize("a, eta, theta", [(0.25, 1.0, 1.0), (0.5, 1.0, 2.0), (0.1, 0.5, 1.5)])
    def test_closed_forms_match_numeric_derivatives(self, a, eta, theta):
        c = tw_constants(a, eta, theta)
        d1, d2, d3 = _log_derivatives(c.z_c, c.v_c, c.b, eta, theta)
        assert abs(d1) < 1e-8
        assert abs(d2) < 1e-8
        assert third_log_derivative(c.z_c, c.b, eta, theta) == pytest.approx(d3, abs=1e-8)
        assert first_log_derivative(1.2, 0.3, c.b, eta, theta) == pytest.approx(
            _log_derivatives(1.2, 0.3, c.b, eta, theta)[0], abs=1e-10
        )
        assert second_log_derivative(1.2, c.b, eta, theta) == pytest.approx(
            _log_derivatives(1.2, 0.3, c.b, eta, theta)[1], abs=1e-10
        )

    def test_critical_point_root(self):
        b, eta, theta = 0.6, 1.0, 3.0
        z = critical_point(b, eta, theta)
        assert theta * z**2 + b * (eta - theta) * z - eta == pytest.approx(0.0, abs=1e-14)
        assert z > 0

    def test_action_domain(self):
        with pytest.raises(ParameterError):
            action_S(3.0, 0.0, 0.5, 1.0, 1.0)

    @pytest.mark.parametrize("a", [0.0, 1.0])
    def test_tw_constants_range(self, a):
        with pytest.raises(ParameterError):
            tw_constants(a)


class TestScalingMaps:
    def test_thm1_center_inverse(self):
        s = thm1_center(37, 0.1, 1.0, 2.0)
        assert thm1_level(s, 0.1, 1.0, 2.0) == pytest.approx(37)

    def test_thm1_center_value(self):
        assert thm1_center(10, 0.1) == pytest.approx(1.0 + 2 * math.log(0.1))

    def test_limit_params(self):
        p = thm1_limit_params(2.0, 0.1)
        assert p.a == pytest.approx(math.exp(-0.2))
        assert p.q == pytest.approx(math.exp(-0.1))
        assert not p.is_finite

    def test_thm2_center(self):
        c = tw_constants(0.25)
        assert thm2_center(c.c1 / 0.05, 0.05, c) == pytest.approx(0.0, abs=1e-12)
        assert thm2_center(c.c1 / 0.05 + c.c2 * 0.05 ** (-1 / 3), 0.05, c) == pytest.approx(1.0)

    def test_thm4_scale(self):
        assert thm4_scale(2.0, 4, 9, 1.0, 2.0) == pytest.approx(2.0 / 4 / 3)

    def test_eps_must_be_positive(self):
        with pytest.raises(ParameterError):
            thm1_center(1, 0.0)


class TestLimitLaws:
    @pytest.mark.parametrize("s", [-1.0, 0.0, 1.0, 2.0])
    def test_gumbel_endpoint(self, s):
        assert F_alpha(s, 0.0) == pytest.approx(gumbel_cdf(s), abs=1e-6)

    def test_tracy_widom_reference_value(self):
        assert F_TW(0.0) == pytest.approx(0.969372828355, abs=1e-7)

    def test_tracy_widom_is_a_cdf(self):
        values = [F_TW(s) for s in (-4.0, -2.0, 0.0, 2.0)]
        assert values == sorted(values)
        assert values[0] < 0.01 and values[-1] > 0.999

    def test_f_alpha_is_monotone_in_alpha(self):
        assert F_alpha(0.0, 0.5) > F_alpha(0.0, 0.0)

    def test_f_alpha_general_exponents(self):
        value = F_alpha(1.0, 0.5, 1.0, 2.0)
        assert 0.0 < value < 1.0

    @pytest.mark.slow
    @pytest.mark.parametrize("s", [-2.0, -1.0, 0.0])
    def test_interpolates_to_tracy_widom(self, s):
        assert F_alpha(interpolation_argument(40.0, s), 40.0) == pytest.approx(F_TW(s), abs=0.05)


class TestInterpolationArgument:
    def test_derived(self):
        assert interpolation_argument(4.0, 0.0) == pytest.approx(-2 * math.log(2))

    def test_printed(self):
        assert interpolation_argument(3.0, 0.0, Centering.PRINTED) == pytest.approx(-2 * math.log(4))

    def test_ranges(self):
        with pytest.raises(ParameterError):
            interpolation_argument(0.5, 0.0, "printed")
        with pytest.raises(ParameterError):
            interpolation_argument(0.0, 0.0)
