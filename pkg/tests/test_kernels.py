import itertools
import math

import numpy as np
import pytest
from mpmath import mp
from scipy import integrate

from mb_workbench.errors import NumericalError, ParameterError
from mb_workbench.fields import ModelParams
from mb_workbench.kernels import (
    ContourKind,
    ContourSpec,
    Domain,
    airy_kernel,
    airy_kernel_contour,
    airy_kernel_matrix,
    bessel_kernel,
    bessel_kernel_integral,
    bessel_kernel_matrix,
    bessel_kernel_diagonal,
    bessel_kernel_tw,
    kc_eval,
    kc_kernel,
    kc_quadrature,
    kd_contours,
    kd_eval,
    kd_kernel,
    kd_matrix,
    kd_oracle,
    khe_integral,
    khe_series,
    khe_series_matrix,
    khe_tilde,
    khe_tilde_matrix,
    wedge_rule,
)

HALF = [k + 0.5 for k in range(-3, 3)]


def bessel_reference(x: float, y: float, alpha: float) -> float:
    with mp.workdps(30):
        value = mp.quad(lambda u: mp.besselj(alpha, 2 * mp.sqrt(u * x)) * mp.besselj(alpha, 2 * mp.sqrt(u * y)), [0, 1])
    return float(value)


class TestContourSpec:
    def test_vertical_line_is_a_right_angle(self):
        assert ContourSpec(ContourKind.VERTICAL_LINE).angle == pytest.approx(math.pi / 2)

    @pytest.mark.parametrize("nodes", [8, 33])
    def test_node_count(self, nodes):
        with pytest.raises(ParameterError):
            ContourSpec(nodes=nodes)

    def test_circle_radius(self):
        with pytest.raises(ParameterError):
            ContourSpec(ContourKind.CIRCLE, radius=0.0)

    def test_vertex_panel_is_non_negative(self):
        with pytest.raises(ParameterError):
            ContourSpec(vertex_panel=-0.1)

    def test_graded_wedge_keeps_its_length(self):
        spec = ContourSpec(half_height=30.0, nodes=64, vertex_panel=0.2)
        points, weights = wedge_rule(spec, "right")
        assert np.sum(np.abs(weights)) == pytest.approx(60.0, rel=1e-12)
        near = np.abs(points - spec.abscissa) < 2.0
        assert near.sum() > 2 * 16 * 5


class TestDiscreteKernel:
    @pytest.mark.parametrize(
        "p",
        [
            ModelParams(a=0.5, q=0.4),
            ModelParams(a=0.8, q=0.6, eta=1.0, theta=2.0),
            ModelParams(a=0.7, q=0.5, M=2, N=3),
        ],
    )
    def test_quadrature_matches_series(self, p):
        block = kd_matrix(HALF, HALF, p)
        for (i, k), (j, l) in itertools.product(enumerate(HALF), repeat=2):
            assert block[i, j] == pytest.approx(kd_oracle(k, l, p), abs=1e-12)

    @pytest.mark.parametrize("p", [ModelParams(a=0.5, q=0.4), ModelParams(a=0.8, q=0.6, eta=1.0, theta=2.0)])
    def test_doubling_the_nodes_changes_nothing(self, p):
        z, w = kd_contours(p)
        doubled = (
            ContourSpec(ContourKind.CIRCLE, radius=z.radius, nodes=2 * z.nodes),
            ContourSpec(ContourKind.CIRCLE, radius=w.radius, nodes=2 * w.nodes),
        )
        assert np.allclose(kd_matrix(HALF, HALF, p), kd_matrix(HALF, HALF, p, doubled), rtol=0.0, atol=1e-13)

    def test_contours_are_nested(self):
        p = ModelParams(a=0.8, q=0.6)
        z, w = kd_contours(p)
        assert w.radius < z.radius
        assert z.nodes >= 64

    def test_zero_a_is_the_empty_configuration(self):
        p = ModelParams(a=0.0, q=0.5)
        assert kd_eval(-0.5, -0.5, p) == 1.0
        assert kd_eval(0.5, 0.5, p) == 0.0
        assert kd_oracle(-1.5, -1.5, p) == 1.0

    def test_rejects_integers(self):
        with pytest.raises(ParameterError):
            kd_eval(1.0, 0.5, ModelParams(a=0.5, q=0.5))

    def test_kernel_fn_checks_domain(self):
        fn = kd_kernel(ModelParams(a=0.5, q=0.5))
        assert fn.domain is Domain.HALF_INTEGER
        with pytest.raises(ParameterError):
            fn.matrix([0.0, 0.5])

    def test_crossing_contours(self):
        p = ModelParams(a=0.5, q=0.5)
        bad = (ContourSpec(ContourKind.CIRCLE, radius=0.1), ContourSpec(ContourKind.CIRCLE, radius=0.9))
        with pytest.raises(NumericalError):
            kd_eval(0.5, 0.5, p, bad)


class TestBesselKernel:
    @pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0])
    def test_closed_form_matches_integral(self, alpha):
        for x, y in [(1.0, 2.0), (0.3, 4.5), (6.0, 0.1)]:
            assert bessel_kernel(x, y, alpha) == pytest.approx(bessel_kernel_integral(x, y, alpha), abs=1e-11)

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.5])
    @pytest.mark.parametrize("x, y", [(1.0, 2.0), (0.3, 4.5), (6.0, 0.1)])
    def test_integral_at_fractional_order(self, alpha, x, y):
        assert bessel_kernel_integral(x, y, alpha) == pytest.approx(bessel_reference(x, y, alpha), abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 1.5])
    @pytest.mark.parametrize("x", [0.01, 1.0, 7.5])
    def test_diagonal_at_fractional_order(self, alpha, x):
        expected = bessel_reference(x, x, alpha)
        assert bessel_kernel(x, x, alpha) == pytest.approx(expected, abs=1e-12)
        assert bessel_kernel_diagonal(np.array([x]), alpha)[0] == pytest.approx(expected, abs=1e-12)

    def test_near_diagonal_uses_the_diagonal_limit(self):
        x = 1.0
        assert bessel_kernel(x, x + 5e-7, 0.5) == pytest.approx(bessel_reference(x, x + 5e-7, 0.5), abs=1e-11)

    def test_tilde_kernel_at_the_origin(self):
        # x = 0 maps to the Bessel diagonal at 1
        value = khe_tilde_matrix(np.array([0.0]), np.array([0.0]), 0.5, 1.0, 1.0)[0, 0]
        assert value == pytest.approx(bessel_reference(1.0, 1.0, 0.5), abs=1e-12)

    def test_diagonal_is_continuous(self):
        near = bessel_kernel(1.0, 1.0 + 1e-4, 0.5)
        assert bessel_kernel(1.0, 1.0, 0.5) == pytest.approx(near, rel=1e-4)

    def test_symmetric(self):
        xs = np.array([0.2, 1.0, 3.0])
        m = bessel_kernel_matrix(xs, xs, 1.0)
        assert np.allclose(m, m.T, atol=1e-14)

    def test_printed_normalisation(self):
        assert bessel_kernel_tw(4.0, 8.0, 0.0) == pytest.approx(bessel_kernel(1.0, 2.0, 0.0) / 4)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0])
    def test_series_reduces_to_bessel(self, alpha):
        grid = np.linspace(0.8, 4.0, 5)
        series = khe_series_matrix(grid, grid, alpha, 1.0, 1.0)
        assert np.allclose(series, bessel_kernel_matrix(grid, grid, alpha), atol=1e-10)

    def test_rejects_non_positive(self):
        with pytest.raises(ParameterError):
            bessel_kernel(0.0, 1.0, 0.0)


class TestHardEdgeKernel:
    @pytest.mark.parametrize("eta, theta", [(1.0, 1.0), (1.0, 2.0), (0.5, 1.5)])
    @pytest.mark.parametrize("x, y", [(0.3, 0.6), (0.5, 0.5), (0.8, 0.1)])
    def test_series_matches_contour(self, eta, theta, x, y):
        assert khe_series(x, y, 0.5, eta, theta) == pytest.approx(khe_integral(x, y, 0.5, eta, theta), abs=1e-8)

    def test_tilde_uses_exponential_variables(self):
        x, y = 0.7, 1.2
        expected = math.exp(-(x + y) / 2) * khe_series(math.exp(-x), math.exp(-y), 1.0, 1.0, 1.0)
        assert khe_tilde(x, y, 1.0, 1.0, 1.0) == pytest.approx(expected, rel=1e-10)

    def test_tilde_general_exponents(self):
        x, y = 0.4, 0.9
        expected = math.exp(-(x + y) / 2) * khe_series(math.exp(-x), math.exp(-y), 0.5, 1.0, 2.0)
        assert khe_tilde(x, y, 0.5, 1.0, 2.0) == pytest.approx(expected, rel=1e-12)

    def test_cancellation_guard(self):
        with pytest.raises(NumericalError):
            khe_series(1e4, 1e4, 0.0, 1.0, 1.0)

    @pytest.mark.parametrize("eta", [1.0, 2.0, 0.5])
    def test_tilde_is_symmetric_for_equal_exponents(self, eta):
        xs = np.array([0.1, 0.8, 2.5])
        m = khe_tilde_matrix(xs, xs, 0.5, eta, eta)
        assert np.allclose(m, m.T, rtol=1e-12, atol=1e-15)

    @pytest.mark.parametrize("alpha", [0.5, 2.0])
    def test_leading_power_at_the_origin(self, alpha):
        # x^(-alpha/2) K(x, y) -> int_0^1 u^(alpha/2) J(2 sqrt(u y)) du / Gamma(alpha + 1) as x -> 0
        y = 1.3
        with mp.workdps(30):
            integral = mp.quad(lambda u: u ** (alpha / 2) * mp.besselj(alpha, 2 * mp.sqrt(u * y)), [0, 1])
            expected = float(integral / mp.gamma(alpha + 1))
        x = 1e-10
        assert khe_series(x, y, alpha, 1.0, 1.0) / x ** (alpha / 2) == pytest.approx(expected, rel=1e-8)
        assert khe_series(x, y, alpha, 1.0, 1.0) == pytest.approx(bessel_kernel(x, y, alpha), rel=1e-8)

    def test_contour_route_domain(self):
        with pytest.raises(ParameterError):
            khe_integral(1.5, 0.5, 0.0, 1.0, 1.0)

    def test_rejects_zero_exponent(self):
        with pytest.raises(ParameterError):
            khe_series(0.5, 0.5, 0.0, 0.0, 1.0)


class TestFiniteKernel:
    def test_single_site(self):
        alpha, eta, theta = 0.5, 1.0, 2.0
        beta = alpha + eta / 2 + theta / 2
        x, y = 0.3, 0.7
        expected = beta * x ** ((alpha + eta - 1) / 2) * y ** ((alpha + theta - 1) / 2)
        assert kc_eval(x, y, alpha, eta, theta, 1, 1) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("x, y", [(0.2, 0.2), (0.2, 0.5), (0.5, 0.3)])
    def test_residues_match_contour(self, x, y):
        assert kc_eval(x, y, 0.5, 1.0, 2.0, 2, 3) == pytest.approx(kc_quadrature(x, y, 0.5, 1.0, 2.0, 2, 3), abs=1e-9)

    def test_contour_value_at_a_reference_point(self):
        assert kc_quadrature(0.5, 0.3, 0.5, 1.0, 2.0, 2, 3) == pytest.approx(1.4388840610329037, abs=1e-9)

    @pytest.mark.parametrize("alpha, eta, theta, M, N", [(0.0, 1.0, 1.0, 3, 3), (1.5, 2.0, 0.5, 2, 4)])
    def test_residues_match_contour_other_exponents(self, alpha, eta, theta, M, N):
        expected = kc_eval(0.4, 0.25, alpha, eta, theta, M, N)
        assert kc_quadrature(0.4, 0.25, alpha, eta, theta, M, N) == pytest.approx(expected, abs=1e-9)

    @pytest.mark.parametrize("M, N", [(1, 1), (2, 3), (3, 3)])
    def test_density_integrates_to_point_count(self, M, N):
        total, _ = integrate.quad(lambda x: kc_eval(x, x, 0.5, 1.0, 2.0, M, N), 0.0, 1.0, limit=200)
        assert total == pytest.approx(M, rel=1e-6)

    def test_domain(self):
        with pytest.raises(ParameterError):
            kc_eval(1.0, 0.5, 0.5, 1.0, 1.0, 1, 1)
        with pytest.raises(ParameterError):
            kc_eval(0.5, 0.5, 0.5, 1.0, 1.0, 3, 2)

    def test_kernel_fn(self):
        fn = kc_kernel(0.5, 1.0, 2.0, 2, 3)
        assert fn(0.2, 0.5) == pytest.approx(kc_eval(0.2, 0.5, 0.5, 1.0, 2.0, 2, 3))


class TestAiryKernel:
    @pytest.mark.parametrize("x, y", [(0.0, 1.0), (-1.0, 0.5), (1.5, 2.0), (-2.0, -2.5)])
    def test_closed_form_matches_contour(self, x, y):
        assert airy_kernel(x, y) == pytest.approx(airy_kernel_contour(x, y), abs=1e-8)

    def test_diagonal(self):
        assert airy_kernel(0.5, 0.5) == pytest.approx(airy_kernel(0.5, 0.5 + 1e-5), rel=1e-4)

    def test_symmetric(self):
        xs = np.array([-1.0, 0.0, 2.0])
        m = airy_kernel_matrix(xs, xs)
        assert np.allclose(m, m.T)
