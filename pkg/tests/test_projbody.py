#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""projbody 包：分数阶与经典投影体、各向异性能量"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.errors import FieldError, ParamError
from core.fields import FieldSpec, random_sl_shear
from core.params import FracParams, validate_params
from projbody.classical import build_classical_body, classical_gauge, limit_scaling_report
from projbody.energy import (
    anisotropic_energy,
    classical_limit_energy,
    direct_double_energy,
    fractional_seminorm,
    moment_body_energy,
)
from projbody.frac_body import build_frac_body, frac_gauge, frac_gauge_signed, quasi_triangle_gap, radial_check_nodes
from quadrature.box_quad import lp_norm
from report_providers.limits_provider import homogeneity_ratio
from report_providers.selftest_provider import gaussian_energy_1d
from starbody.star_body import ball, ball_radius_spread, ellipsoid, linear_image, random_star_body

GAUSSIAN_1D = FieldSpec(kind="gaussian", n=1)
RAMP = FieldSpec(kind="ramp_bump", n=2, slope=0.6)
PLANAR_BODIES = {
    "ball": lambda grid: ball(grid, 0.9),
    "ellipsoid": lambda grid: ellipsoid(grid, [1.3, 0.8]),
    "sheared_ball": lambda grid: linear_image(random_sl_shear(2, 3), ball(grid)),
}


def test_unit_interval_gauge(quad):
    # f = χ[0,1]：‖f(·+t) − f‖₂² = 2·min(t, 1)，ps = 1/2 时积分为 8
    f = FieldSpec(kind="ball_indicator", n=1, radius=0.5, center=(0.5,))
    params = FracParams(1, 0.25, 2.0)
    assert frac_gauge(f, [1.0], params, quad) ** params.ps == pytest.approx(8.0, rel=5e-3)


def test_gauge_is_homogeneous(quad):
    params = FracParams(1, 0.25, 2.0)
    one = frac_gauge(GAUSSIAN_1D, [1.0], params, quad)
    assert frac_gauge(GAUSSIAN_1D, [2.5], params, quad) == pytest.approx(2.5 * one, rel=1e-4)


@pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
def test_gaussian_energy_closed_form(quad, s):
    energy = fractional_seminorm(GAUSSIAN_1D, FracParams(1, s, 2.0), quad)
    assert energy == pytest.approx(gaussian_energy_1d(s), rel=1e-3)


@settings(max_examples=10, deadline=None)
@given(shift=st.tuples(st.floats(-3.0, 3.0), st.floats(-3.0, 3.0)))
def test_gauge_is_translation_invariant(small_quad, shift):
    params = FracParams(2, 0.5, 2.0)
    xi = [0.6, 0.8]
    assert frac_gauge(RAMP.translated(shift), xi, params, small_quad) == pytest.approx(
        frac_gauge(RAMP, xi, params, small_quad), rel=1e-10)


def test_zero_function_rejected(small_quad):
    with pytest.raises(FieldError):
        frac_gauge(FieldSpec(kind="gaussian", n=2, scale=0.0), [1.0, 0.0], FracParams(2, 0.5, 2.0), small_quad)


def test_gauge_of_zero_vector(small_quad):
    assert frac_gauge(RAMP, [0.0, 0.0], FracParams(2, 0.5, 2.0), small_quad) == 0.0


@pytest.mark.parametrize("scale", [0.3, 2.5, 40.0])
def test_signed_gauge_is_homogeneous(small_quad, scale):
    params = FracParams(2, 0.5, 2.0)
    xi = np.array([0.6, 0.8])
    one = frac_gauge_signed(RAMP, xi, params, "+", small_quad)
    assert frac_gauge_signed(RAMP, scale * xi, params, "+", small_quad) == pytest.approx(scale * one, rel=1e-12)


def test_radial_body_is_ball(small_quad):
    f = FieldSpec(kind="gaussian", n=2)
    params = FracParams(2, 0.5, 2.0)
    grid = small_quad.sphere(2)
    result = build_frac_body(f, params, grid, "sym", small_quad)
    assert radial_check_nodes(grid) == [0, 2]
    assert result.quadrature["computed_nodes"] == 2
    spread = result.quadrature["radial_spread"]
    assert ball_radius_spread(result.body) == pytest.approx(spread, rel=1e-12, abs=1e-15)
    # 32 点盒子规则下高斯函数的方向误差约为 1e-3
    assert spread < 5e-3
    assert result.gauges[0] == pytest.approx(frac_gauge(f, grid.nodes[0], params, small_quad), rel=1e-12)
    assert result.gauges[2] == pytest.approx(frac_gauge(f, grid.nodes[2], params, small_quad), rel=1e-12)
    assert result.gauges[3] == pytest.approx(frac_gauge(f, grid.nodes[3], params, small_quad), rel=5e-3)


@pytest.mark.slow
def test_radial_body_is_ball_at_default_accuracy(quad):
    f = FieldSpec(kind="gaussian", n=2)
    result = build_frac_body(f, FracParams(2, 0.5, 2.0), quad.sphere(2), "sym", quad, symmetry=False)
    assert ball_radius_spread(result.body) < 1e-3


def test_symmetric_variant_reuses_antipodes(small_quad):
    grid = small_quad.sphere(2)
    result = build_frac_body(RAMP, FracParams(2, 0.5, 2.0), grid, "sym", small_quad)
    np.testing.assert_array_equal(result.body.rho, result.body.rho[grid.antipodes])
    assert result.quadrature["computed_nodes"] == grid.size // 2


def test_asymmetric_parts_sum_to_symmetric(small_quad):
    params = FracParams(2, 0.5, 2.0)
    grid = small_quad.sphere(2)
    powers = {v: build_frac_body(RAMP, params, grid, v, small_quad, symmetry=False).gauges ** params.ps
              for v in ("sym", "plus", "minus")}
    np.testing.assert_allclose(powers["plus"] + powers["minus"], powers["sym"], rtol=1e-6)


@pytest.mark.parametrize("field", [
    FieldSpec(kind="ball_indicator", n=2, radius=0.8),
    FieldSpec(kind="ball_indicator", n=2, affine=random_sl_shear(2, 8)),
])
def test_even_indicator_has_equal_signed_bodies(small_quad, field):
    params = FracParams(2, 0.25, 2.0)
    grid = small_quad.sphere(2)
    plus = build_frac_body(field, params, grid, "plus", small_quad, symmetry=False).body
    minus = build_frac_body(field, params, grid, "minus", small_quad, symmetry=False).body
    np.testing.assert_allclose(plus.rho, minus.rho, rtol=1e-6)


@pytest.mark.slow
def test_even_smooth_field_has_equal_signed_bodies(quad):
    f = FieldSpec(kind="gaussian", n=2, affine=random_sl_shear(2, 8))
    params = FracParams(2, 0.5, 2.0)
    grid = quad.sphere(2)
    plus = build_frac_body(f, params, grid, "plus", quad, symmetry=False).body
    minus = build_frac_body(f, params, grid, "minus", quad, symmetry=False).body
    np.testing.assert_allclose(plus.rho, minus.rho, rtol=1e-3)


def test_bodies_share_a_bound_in_s(small_quad):
    f = FieldSpec(kind="bump", n=2)
    grid = small_quad.sphere(2)
    p = 2.0
    norm = lp_norm(f, p, small_quad.box_for(f)) ** p
    reach = 2.0 * f.support_radius
    rho, bounds = [], []
    for s in (0.3, 0.5, 0.7, 0.9):
        params = validate_params(2, s, p, sobolev=False)
        # 支撑分离后 ‖f(·+tξ) − f‖_p^p = 2‖f‖_p^p，所以 ‖ξ‖^{ps} ≥ 2‖f‖_p^p (2R)^{−ps} / ps
        bounds.append(reach * (params.ps / (2.0 * norm)) ** (1.0 / params.ps))
        rho.append(build_frac_body(f, params, grid, "sym", small_quad).body.rho)
    rho = np.stack(rho)
    assert np.all(np.isfinite(rho)) and rho.min() > 0.0
    assert np.all(rho <= 1.01 * np.array(bounds)[:, None])
    assert rho.max() <= 1.01 * max(bounds)


@pytest.mark.slow
@pytest.mark.parametrize("variant", ["sym", "plus"])
def test_body_is_affine_covariant(quad, variant):
    params = FracParams(2, 0.5, 2.0)
    grid = quad.sphere(2)
    phi = random_sl_shear(2, 5)
    base = build_frac_body(RAMP, params, grid, variant, quad).body
    image = build_frac_body(RAMP.composed_with(phi), params, grid, variant, quad).body
    np.testing.assert_allclose(image.rho, linear_image(phi, base).rho, rtol=0.02)


def test_signed_gauge_matches_body(small_quad):
    params = FracParams(2, 0.5, 2.0)
    grid = small_quad.sphere(2)
    body = build_frac_body(RAMP, params, grid, "plus", small_quad, symmetry=False)
    assert frac_gauge_signed(RAMP, grid.nodes[5], params, "+", small_quad) == pytest.approx(body.gauges[5])
    with pytest.raises(ParamError):
        frac_gauge_signed(RAMP, grid.nodes[5], params, "x", small_quad)


def test_quasi_triangle(small_quad):
    params = FracParams(2, 0.5, 2.0)
    lhs, rhs = quasi_triangle_gap(RAMP, [1.0, 0.0], [0.0, 1.0], params, small_quad, "plus")
    assert 0.0 < lhs <= rhs


def test_unknown_variant(small_quad):
    with pytest.raises(ParamError):
        build_frac_body(RAMP, FracParams(2, 0.5, 2.0), small_quad.sphere(2), "both", small_quad)


def test_dimension_mismatch(small_quad):
    with pytest.raises(ParamError):
        build_frac_body(RAMP, FracParams(1, 0.5, 1.5), small_quad.sphere(2), "sym", small_quad)


def test_energy_scales_with_body(small_quad):
    params = FracParams(2, 0.5, 2.0)
    grid = small_quad.sphere(2)
    body = build_frac_body(RAMP, params, grid, "sym", small_quad).body
    K = random_star_body(3, 2, grid)
    base = anisotropic_energy(RAMP, K, params, small_quad, body=body)
    scaled = anisotropic_energy(RAMP, K.dilate(1.5), params, small_quad, body=body)
    assert scaled == pytest.approx(1.5 ** (2 + params.ps) * base, rel=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("field", [
    GAUSSIAN_1D,
    FieldSpec(kind="bump", n=1, radius=1.2),
    FieldSpec(kind="ramp_bump", n=1, slope=0.5),
])
def test_energy_identity_against_double_integral(quad, field):
    params = FracParams(1, 0.25, 2.0)
    K = ball(quad.sphere(1), 0.8)
    assert anisotropic_energy(field, K, params, quad) == pytest.approx(
        direct_double_energy(field, K, params, quad), rel=0.02)


@pytest.mark.slow
@pytest.mark.parametrize("body", sorted(PLANAR_BODIES))
@pytest.mark.parametrize("field", [
    FieldSpec(kind="gaussian", n=2),
    FieldSpec(kind="bump", n=2, radius=1.2),
    RAMP,
])
def test_planar_energy_identity_against_double_integral(quad, field, body):
    params = FracParams(2, 0.25, 2.0)
    K = PLANAR_BODIES[body](quad.sphere(2))
    assert anisotropic_energy(field, K, params, quad) == pytest.approx(
        direct_double_energy(field, K, params, quad), rel=0.02)


class TestClassical:
    def test_gaussian_gauge(self, quad):
        # ∫ (∂₁ e^{−|x|²})² dx = π/2
        f = FieldSpec(kind="gaussian", n=2)
        assert classical_gauge(f, [1.0, 0.0], 2.0, "sym", quad) == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-8)

    def test_signed_variants_split_power(self, small_quad):
        plus = classical_gauge(RAMP, [0.6, 0.8], 2.0, "plus", small_quad) ** 2
        minus = classical_gauge(RAMP, [0.6, 0.8], 2.0, "minus", small_quad) ** 2
        full = classical_gauge(RAMP, [0.6, 0.8], 2.0, "sym", small_quad) ** 2
        assert plus + minus == pytest.approx(full, rel=1e-12)

    def test_indicator_rejected(self, small_quad):
        with pytest.raises(FieldError):
            build_classical_body(FieldSpec(kind="ball_indicator", n=2), 2.0, small_quad.sphere(2), "sym", small_quad)

    def test_moment_body_route(self, small_quad):
        grid = small_quad.sphere(2)
        L = ellipsoid(grid, [1.3, 0.8])
        assert moment_body_energy(RAMP, L, 2.0, small_quad) == pytest.approx(
            classical_limit_energy(RAMP, L, 2.0, small_quad), rel=1e-10)

    def test_limit_target_homogeneity(self, small_quad):
        L = ellipsoid(small_quad.sphere(2), [1.3, 0.8])
        assert homogeneity_ratio(RAMP, 2.0, small_quad, 1.5, L) == pytest.approx(1.5 ** 4, rel=1e-10)

    def test_s_list_must_increase(self, small_quad):
        with pytest.raises(ParamError):
            limit_scaling_report(GAUSSIAN_1D, [1.0], 2.0, [0.9, 0.5], small_quad)

    def test_gauge_approaches_classical(self, quad):
        rows = limit_scaling_report(GAUSSIAN_1D, [1.0], 2.0, [0.5, 0.9, 0.99], quad)
        residuals = [row["residual"] for row in rows]
        assert residuals[0] > residuals[1] > residuals[2]

    @pytest.mark.parametrize("field", [GAUSSIAN_1D, FieldSpec(kind="ramp_bump", n=1, slope=0.5)])
    def test_signed_gauge_approaches_classical(self, quad, field):
        rows = limit_scaling_report(field, [1.0], 2.0, [0.5, 0.9, 0.99], quad, variant="plus")
        residuals = [row["residual"] for row in rows]
        assert residuals[0] > residuals[1] > residuals[2]
        assert {row["variant"] for row in rows} == {"plus"}
        assert rows[0]["classical_gauge"] == pytest.approx(classical_gauge(field, [1.0], 2.0, "plus", quad))
