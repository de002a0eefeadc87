#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
数值积分包
盒子上的张量积规则、球面网格以及奇异 t 积分
"""

from quadrature.box_quad import (
    BoxQuad,
    ShiftedEnergyKernel,
    box_for_field,
    integrate_box,
    lp_norm,
    shifted_energy,
    shifted_energy_signed,
)
from quadrature.quad_config import QuadConfig
from quadrature.sphere_grid import SphereGrid, default_sphere_grid, reference_sphere_grid, sphere_grid
from quadrature.t_integral import TGrid, TIntegralResult, one_dim_limit, t_integral, t_integral_parts

__all__ = [
    'BoxQuad',
    'ShiftedEnergyKernel',
    'box_for_field',
    'integrate_box',
    'lp_norm',
    'shifted_energy',
    'shifted_energy_signed',
    'QuadConfig',
    'SphereGrid',
    'default_sphere_grid',
    'reference_sphere_grid',
    'sphere_grid',
    'TGrid',
    'TIntegralResult',
    'one_dim_limit',
    't_integral',
    't_integral_parts',
]
