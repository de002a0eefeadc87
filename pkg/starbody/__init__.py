#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
星形体包
"""

from starbody.star_body import (
    StarBody,
    BODY_KINDS,
    ball,
    ball_radius_spread,
    body_from_spec,
    dual_mixed_volume,
    dual_mixed_volume_bound,
    ellipsoid,
    from_gauge,
    gauge_eval,
    is_dilate,
    linear_image,
    moment_body_support,
    radial_sum,
    random_star_body,
    relative_rho_distance,
    schwarz_ball,
    unit_volume_normalized,
    volume,
    volume_power,
)

__all__ = [
    'StarBody',
    'BODY_KINDS',
    'ball',
    'ball_radius_spread',
    'body_from_spec',
    'dual_mixed_volume',
    'dual_mixed_volume_bound',
    'ellipsoid',
    'from_gauge',
    'gauge_eval',
    'is_dilate',
    'linear_image',
    'moment_body_support',
    'radial_sum',
    'random_star_body',
    'relative_rho_distance',
    'schwarz_ball',
    'unit_volume_normalized',
    'volume',
    'volume_power',
]
