#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""core 包：参数校验、常数、仿射映射与函数目录"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.errors import FieldError, GeometryError, ParamError
from core.fields import (
    AbsField,
    AffineMap,
    FieldSpec,
    SumField,
    ball_lens_measure,
    eval_field,
    eval_gradient,
    field_from_dict,
    random_sl_shear,
)
from core.params import FracParams, alpha_np, alpha_np_exact, omega_n, sphere_area, validate_params


class TestValidateParams:
    def test_valid_triple(self):
        params = validate_params(2, 0.5, 2.0)
        assert params == FracParams(2, 0.5, 2.0)
        assert params.ps == 1.0
        assert params.sobolev_exp == pytest.approx(4.0)

    @pytest.mark.parametrize("n, s, p, code", [
        (2, 1.2, 2.0, "s_range"),
        (2, 0.0, 2.0, "s_range"),
        (2, 0.5, 1.0, "p_low"),
        (2, 0.5, 4.0, "p_high"),
        (4, 0.5, 2.0, "dimension"),
        (2.5, 0.5, 2.0, "dimension"),
    ])
    def test_each_violation_has_its_own_code(self, n, s, p, code):
        with pytest.raises(ParamError) as info:
            validate_params(n, s, p)
        assert info.value.code == code

    def test_limit_sweep_allows_ps_above_n(self):
        params = validate_params(1, 0.95, 2.0, sobolev=False)
        assert params.ps > params.n
        assert params.sobolev_exp == math.inf

    def test_with_s_skips_sobolev_check(self):
        assert FracParams(1, 0.25, 2.0).with_s(0.9).s == 0.9


class TestConstants:
    @pytest.mark.parametrize("n, expected", [(1, 2.0), (2, math.pi), (3, 4.0 * math.pi / 3.0)])
    def test_omega(self, n, expected):
        assert omega_n(n) == pytest.approx(expected, rel=1e-14)

    def test_sphere_area(self):
        assert sphere_area(3) == pytest.approx(4.0 * math.pi)

    @pytest.mark.parametrize("n", [2, 3])
    def test_alpha_quadratic_moment(self, n):
        assert alpha_np(n, 2.0) == pytest.approx(alpha_np_exact(n, 2.0), rel=1e-10)

    @pytest.mark.parametrize("n, p", [(2, 1.5), (2, 3.0), (3, 3.0)])
    def test_alpha_matches_closed_form(self, n, p):
        assert alpha_np(n, p) == pytest.approx(alpha_np_exact(n, p), rel=1e-4)

    def test_alpha_one_dimensional(self):
        assert alpha_np(1, 2.7) == 2.0
        assert alpha_np_exact(1, 2.7) == pytest.approx(2.0)

    @pytest.mark.parametrize("n, p", [(2, 1.5), (2, 2.5), (3, 2.0), (3, 4.0)])
    def test_alpha_independent_of_direction(self, n, p):
        etas = np.random.default_rng(5).normal(size=(16, n))
        values = np.array([alpha_np(n, p, eta=eta) for eta in etas])
        assert values.max() / values.min() - 1.0 < 1e-6


class TestAffineMap:
    def test_singular_matrix_rejected(self):
        with pytest.raises(GeometryError):
            AffineMap([[1.0, 2.0], [2.0, 4.0]])

    def test_ill_conditioned_matrix_rejected(self):
        with pytest.raises(GeometryError):
            AffineMap([[1.0e4, 0.0], [0.0, 1.0e-4]])

    def test_sl_normalized(self):
        phi = AffineMap.sl_normalized([[2.0, 1.0], [0.0, 3.0]])
        assert phi.det == pytest.approx(1.0)
        with pytest.raises(GeometryError):
            AffineMap.sl_normalized([[-1.0, 0.0], [0.0, 1.0]])

    def test_pull_back_inverts_apply(self):
        phi = AffineMap([[1.0, 0.4], [0.2, 1.5]], [0.3, -0.1])
        y = np.array([[0.5, -1.0], [2.0, 0.25]])
        np.testing.assert_allclose(phi.pull_back(phi.apply(y)), y, atol=1e-13)

    def test_compose(self):
        outer = AffineMap([[2.0, 0.0], [0.0, 0.5]], [1.0, 0.0])
        inner = AffineMap([[1.0, 1.0], [0.0, 1.0]], [0.0, 2.0])
        y = np.array([0.3, 0.7])
        np.testing.assert_allclose(outer.compose(inner).apply(y), outer.apply(inner.apply(y)))

    def test_conformal(self):
        c, s = math.cos(0.3), math.sin(0.3)
        assert AffineMap([[2 * c, -2 * s], [2 * s, 2 * c]]).is_conformal()
        assert not AffineMap([[1.0, 0.5], [0.0, 1.0]]).is_conformal()

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10_000), n=st.sampled_from([2, 3]))
    def test_random_shear_has_unit_determinant(self, seed, n):
        phi = random_sl_shear(n, seed)
        assert phi.det == pytest.approx(1.0, rel=1e-10)
        assert phi.is_linear()


class TestFieldSpec:
    def test_unknown_kind(self):
        with pytest.raises(FieldError):
            FieldSpec(kind="triangle", n=2)

    def test_bubble_requires_n_above_2s(self):
        with pytest.raises(FieldError):
            FieldSpec(kind="bubble", n=1, s=0.75)

    def test_gaussian_values(self):
        f = FieldSpec(kind="gaussian", n=2, width=2.0)
        assert eval_field(f, [0.0, 0.0]) == 1.0
        assert eval_field(f, [2.0, 0.0]) == pytest.approx(math.exp(-1.0))

    def test_indicator_has_no_gradient(self):
        with pytest.raises(FieldError):
            eval_gradient(FieldSpec(kind="ball_indicator", n=2), [0.1, 0.1])

    @pytest.mark.parametrize("kind, extra", [
        ("gaussian", {}),
        ("bump", {"radius": 1.3}),
        ("ramp_bump", {"radius": 1.0, "slope": 0.6}),
        ("bubble", {"s": 0.5}),
    ])
    def test_gradient_matches_finite_differences(self, kind, extra):
        phi = AffineMap([[1.2, 0.3], [0.0, 0.9]], [0.1, -0.2])
        f = FieldSpec(kind=kind, n=2, affine=phi, **extra)
        rng = np.random.default_rng(11)
        u = rng.normal(size=(100, 2))
        radius = 0.9 * min(f.local_radius, 3.0)
        u *= radius * np.sqrt(rng.uniform(size=(100, 1))) / np.linalg.norm(u, axis=1, keepdims=True)
        x = phi.apply(u)
        h = 1.0e-6
        numeric = np.stack([(f.value(x + h * e) - f.value(x - h * e)) / (2.0 * h) for e in np.eye(2)], axis=1)
        np.testing.assert_allclose(f.gradient(x), numeric, rtol=1e-5, atol=1e-8)

    def test_composition_is_pull_back(self):
        f = FieldSpec(kind="ramp_bump", n=2, slope=0.4)
        phi = AffineMap([[1.5, 0.2], [0.0, 0.7]], [0.4, 0.1])
        x = np.array([[0.5, 0.2], [-0.3, 0.6]])
        np.testing.assert_allclose(f.composed_with(phi).value(x), f.value(phi.pull_back(x)))

    def test_symmetry_flags(self):
        gaussian = FieldSpec(kind="gaussian", n=2)
        assert gaussian.is_radial and gaussian.is_even and gaussian.is_affine_radial
        sheared = gaussian.composed_with(AffineMap([[1.0, 0.5], [0.0, 1.0]]))
        assert not sheared.is_radial and sheared.is_even and sheared.is_affine_radial
        shifted = gaussian.translated([0.5, 0.0])
        assert not shifted.is_radial and not shifted.is_even and shifted.is_affine_radial
        ramp = FieldSpec(kind="ramp_bump", n=2, slope=0.3)
        assert not ramp.is_radial and not ramp.is_even and not ramp.is_affine_radial

    def test_negation_and_absolute(self):
        f = FieldSpec(kind="bump", n=1)
        g = f.negated()
        assert not g.is_nonnegative
        assert g.absolute().is_nonnegative
        assert eval_field(g, [0.2]) == pytest.approx(-eval_field(f, [0.2]))
        assert f.with_scale(3.0).scale == 3.0

    def test_indicator_overlap_energy(self):
        # χ[0,1]：对称差长度为 2·min(|z|, 1)
        f = FieldSpec(kind="ball_indicator", n=1, radius=0.5, center=(0.5,))
        assert f.overlap_energy(np.array([0.3]), 2.0) == pytest.approx(0.6)
        assert f.overlap_energy(np.array([5.0]), 2.0) == pytest.approx(2.0)
        assert f.overlap_energy(np.array([0.3]), 2.0, "+") == pytest.approx(0.3)

    def test_indicator_superlevel_measure(self):
        phi = AffineMap([[2.0, 0.0], [0.0, 1.5]])
        f = FieldSpec(kind="ball_indicator", n=2, radius=0.5, affine=phi)
        assert f.exact_superlevel_measure(0.5) == pytest.approx(3.0 * math.pi * 0.25)
        assert f.exact_superlevel_measure(1.5) == 0.0


class TestCompositeFields:
    def test_sum_field(self):
        a = FieldSpec(kind="bump", n=2, center=(-0.8, 0.0))
        b = FieldSpec(kind="bump", n=2, center=(0.8, 0.0), scale=-0.5)
        f = SumField([a, b])
        x = np.array([[0.1, 0.2]])
        np.testing.assert_allclose(f.value(x), a.value(x) + b.value(x))
        assert not f.is_nonnegative
        assert f.is_smooth
        np.testing.assert_allclose(f.negated().value(x), -f.value(x))

    def test_sum_field_dimension_mismatch(self):
        with pytest.raises(FieldError):
            SumField([FieldSpec(kind="bump", n=1), FieldSpec(kind="bump", n=2)])

    def test_abs_field(self):
        f = SumField([FieldSpec(kind="bump", n=1, center=(-1.0,)),
                      FieldSpec(kind="bump", n=1, center=(1.0,), scale=-1.0)])
        g = f.absolute()
        assert isinstance(g, AbsField)
        assert g.is_nonnegative
        assert eval_field(g, [1.0]) == pytest.approx(1.0)


class TestFieldCodec:
    def test_kind_string(self):
        f = field_from_dict("gaussian", 2)
        assert isinstance(f, FieldSpec) and f.n == 2 and f.width == 1.0

    def test_canonical_dict_rebuilds_same_field(self):
        f = field_from_dict({"kind": "ramp_bump", "n": 2, "slope": 0.3, "center": [0.1, 0.2],
                             "affine": {"matrix": [[1.0, 0.2], [0.0, 1.0]]}})
        g = field_from_dict(f.to_dict())
        x = np.array([[0.3, -0.4], [0.0, 0.5]])
        np.testing.assert_allclose(f.value(x), g.value(x))
        assert g.to_dict() == f.to_dict()

    def test_sum_spec(self):
        f = field_from_dict({"kind": "sum", "terms": ["bump", {"kind": "gaussian", "scale": -0.5}]}, 1)
        assert isinstance(f, SumField) and len(f.terms) == 2

    def test_unknown_parameter(self):
        with pytest.raises(FieldError):
            field_from_dict({"kind": "gaussian", "n": 2, "sigma": 1.0})

    def test_missing_dimension(self):
        with pytest.raises(FieldError):
            field_from_dict({"kind": "gaussian"})


class TestLensMeasure:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_zero_distance_is_ball(self, n):
        assert ball_lens_measure(n, 0.7, 0.0) == pytest.approx(omega_n(n) * 0.7 ** n)

    @settings(max_examples=30, deadline=None)
    @given(n=st.sampled_from([1, 2, 3]), r=st.floats(0.1, 2.0), a=st.floats(0.0, 1.0), b=st.floats(0.0, 1.0))
    def test_decreasing_in_distance(self, n, r, a, b):
        d0, d1 = sorted((2.0 * r * a, 2.0 * r * b))
        assert ball_lens_measure(n, r, d1) <= ball_lens_measure(n, r, d0) + 1e-12

    def test_disjoint(self):
        assert ball_lens_measure(2, 1.0, 2.0) == 0.0
