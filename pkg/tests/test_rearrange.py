#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""rearrange 包：径向剖面、Schwarz 对称化、Riesz 与 Pólya–Szegő"""

import math

import numpy as np
import pytest

from core.errors import FieldError, ParamError
from core.fields import AffineMap, FieldSpec, random_sl_shear
from core.params import FracParams
from quadrature.box_quad import lp_norm
from rearrange.polya_szego import polya_szego_gap
from rearrange.riesz import burchard_triple, in_burchard_window, random_indicator_triple, riesz_gap
from rearrange.schwarz import (
    ProfileField,
    RadialProfile,
    equimeasurability_gap,
    profile_lp_norm,
    schwarz_rearrange,
    superlevel_measure,
    symmetral,
)
from starbody.star_body import ellipsoid

LINEAR = RadialProfile(2, [0.0, 1.0, 2.0], [2.0, 1.0, 0.0])


class TestRadialProfile:
    @pytest.mark.parametrize("radii, values", [
        ([0.0], [1.0]),
        ([0.0, 1.0], [1.0]),
        ([0.1, 1.0], [1.0, 0.5]),
        ([0.0, 1.0, 1.0], [1.0, 0.5, 0.2]),
        ([0.0, 1.0], [0.5, 1.0]),
        ([0.0, 1.0], [1.0, -0.1]),
    ])
    def test_invalid(self, radii, values):
        with pytest.raises(FieldError):
            RadialProfile(2, radii, values)

    def test_evaluate(self):
        np.testing.assert_allclose(LINEAR.evaluate([0.0, 0.5, 1.5, 2.5]), [2.0, 1.5, 0.5, 0.0], atol=1e-12)

    @pytest.mark.parametrize("t, expected", [(1.5, 0.5), (3.0, 0.0), (0.0, 2.0), (1.0, 1.0)])
    def test_level_radius(self, t, expected):
        assert LINEAR.level_radius(t) == pytest.approx(expected, abs=1e-10)

    def test_level_measure(self):
        assert LINEAR.level_measure(1.5) == pytest.approx(math.pi * 0.25, rel=1e-10)

    def test_constant_profile_norm(self):
        flat = RadialProfile(2, [0.0, 1.0], [1.0, 1.0])
        assert flat.lp_norm_power(2.0) == pytest.approx(math.pi, rel=1e-12)
        assert profile_lp_norm(flat, 2.0) == pytest.approx(math.sqrt(math.pi), rel=1e-12)

    def test_frame(self):
        frame = LINEAR.to_frame()
        assert list(frame.columns) == ["radius", "value"]
        assert len(frame) == 3


class TestSchwarz:
    def test_sheared_indicator_becomes_unit_ball(self, small_quad):
        f = FieldSpec(kind="ball_indicator", n=2, affine=AffineMap(random_sl_shear(2, 4).matrix, [0.3, -0.2]))
        profile = schwarz_rearrange(f, small_quad.level_count, small_quad)
        assert profile.outer_radius == pytest.approx(1.0, rel=1e-10)
        assert profile.peak == 1.0

    def test_gaussian_is_fixed(self, quad):
        f = FieldSpec(kind="gaussian", n=2)
        profile = schwarz_rearrange(f, quad.level_count, quad)
        r = np.linspace(0.0, 2.0, 9)
        np.testing.assert_allclose(profile.evaluate(r), np.exp(-r ** 2), atol=2e-2)
        assert equimeasurability_gap(f, profile, quad) < 0.02

    def test_norm_is_preserved(self, quad):
        f = FieldSpec(kind="ramp_bump", n=2, slope=0.5)
        profile = schwarz_rearrange(f, quad.level_count, quad)
        assert profile_lp_norm(profile, 2.0) == pytest.approx(lp_norm(f, 2.0, quad.box_for(f)), rel=2e-2)

    def test_negative_field_rejected(self, small_quad):
        f = FieldSpec(kind="ramp_bump", n=2, slope=0.5).negated()
        with pytest.raises(FieldError):
            schwarz_rearrange(f, small_quad.level_count, small_quad)

    def test_zero_field_rejected(self, small_quad):
        with pytest.raises(FieldError):
            schwarz_rearrange(FieldSpec(kind="gaussian", n=2, scale=0.0), small_quad.level_count, small_quad)

    def test_level_count(self, small_quad):
        with pytest.raises(FieldError):
            schwarz_rearrange(FieldSpec(kind="gaussian", n=2), 1, small_quad)

    @pytest.mark.parametrize("t", [0.0, -1.0])
    def test_threshold_must_be_positive(self, small_quad, t):
        with pytest.raises(FieldError):
            superlevel_measure(FieldSpec(kind="gaussian", n=2), t, small_quad)

    def test_indicator_measure_is_exact(self, small_quad):
        f = FieldSpec(kind="ball_indicator", n=2, radius=0.7)
        assert superlevel_measure(f, 0.5, small_quad) == pytest.approx(math.pi * 0.49, rel=1e-12)
        assert superlevel_measure(f, 1.5, small_quad) == 0.0

    def test_jump_profile_has_no_gradient(self, small_quad):
        star = symmetral(FieldSpec(kind="ball_indicator", n=2), small_quad)
        assert isinstance(star, ProfileField)
        assert not star.is_smooth
        with pytest.raises(FieldError):
            star.gradient(np.zeros((1, 2)))

    def test_symmetral_is_idempotent(self, small_quad):
        once = symmetral(FieldSpec(kind="ramp_bump", n=2, slope=0.5), small_quad)
        twice = symmetral(once, small_quad)
        r = np.linspace(0.0, 1.1 * once.profile.outer_radius, 60)
        np.testing.assert_allclose(twice.profile.evaluate(r), once.profile.evaluate(r), atol=1e-6)
        assert twice.to_dict() == once.to_dict()

    def test_profile_field_round_trip(self, small_quad):
        star = symmetral(FieldSpec(kind="bump", n=2), small_quad)
        data = star.to_dict()
        assert data["kind"] == "profile"
        assert star.is_radial and star.is_nonnegative


class TestRiesz:
    def test_window(self):
        assert in_burchard_window(1.0, 0.8, 1.2)
        assert not in_burchard_window(1.0, 0.8, 2.0)
        assert not in_burchard_window(1.0, 0.8, 0.2)

    def test_window_rejects_degenerate_triangles(self):
        # 0.1 + 0.2 的浮点值略大于 0.3
        assert not in_burchard_window(0.1, 0.2, 0.3)
        assert not in_burchard_window(0.3, 0.1, 0.2)
        assert in_burchard_window(0.1, 0.2, 0.3 - 1e-9)

    def test_centered_balls_are_equal(self, small_quad):
        f = FieldSpec(kind="ball_indicator", n=2, radius=1.0)
        k = FieldSpec(kind="ball_indicator", n=2, radius=0.6)
        g = FieldSpec(kind="ball_indicator", n=2, radius=0.8)
        lhs, rhs = riesz_gap(f, k, g, small_quad)
        assert lhs > 0.0
        assert lhs == pytest.approx(rhs, rel=1e-6)

    def test_dimension_mismatch(self, small_quad):
        with pytest.raises(FieldError):
            riesz_gap(FieldSpec(kind="ball_indicator", n=2), FieldSpec(kind="ball_indicator", n=1),
                      FieldSpec(kind="ball_indicator", n=2), small_quad)

    def test_random_triple_is_reproducible(self):
        first = [f.to_dict() for f in random_indicator_triple(7, 2)]
        assert first == [f.to_dict() for f in random_indicator_triple(7, 2)]

    def test_burchard_triple_rejects_nonpositive(self):
        with pytest.raises(FieldError):
            burchard_triple(2, alpha=0.0)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_random_triples(self, quad, seed):
        lhs, rhs = riesz_gap(*random_indicator_triple(seed, 2), quad)
        assert lhs <= rhs * 1.02

    @pytest.mark.slow
    def test_common_ellipsoid_triple_is_sharp(self, quad):
        lhs, rhs = riesz_gap(*burchard_triple(2, seed=9), quad)
        assert lhs == pytest.approx(rhs, rel=2e-2)


class TestPolyaSzego:
    def test_minus_variant_rejected(self, small_quad):
        K = ellipsoid(small_quad.sphere(2), [1.3, 0.8])
        with pytest.raises(ParamError):
            polya_szego_gap(FieldSpec(kind="bump", n=2), K, FracParams(2, 0.5, 2.0), "minus", small_quad)

    @pytest.mark.slow
    def test_rearrangement_lowers_energy(self, quad):
        K = ellipsoid(quad.sphere(2), [1.3, 0.8])
        f = FieldSpec(kind="ramp_bump", n=2, slope=0.6)
        lhs, rhs = polya_szego_gap(f, K, FracParams(2, 0.5, 2.0), "sym", quad)
        assert lhs >= rhs * 0.98
