#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
投影体包
分数阶与经典 L^p 极投影体，以及各向异性能量的两条计算路线
"""

from projbody.classical import build_classical_body, classical_gauge, limit_scaling_report
from projbody.energy import (
    anisotropic_energy,
    classical_limit_energy,
    direct_double_energy,
    fractional_seminorm,
    moment_body_energy,
)
from projbody.frac_body import (
    VARIANTS,
    ProjBodyResult,
    build_frac_body,
    frac_gauge,
    frac_gauge_signed,
    quasi_triangle_gap,
)

__all__ = [
    'build_classical_body',
    'classical_gauge',
    'limit_scaling_report',
    'anisotropic_energy',
    'classical_limit_energy',
    'direct_double_energy',
    'fractional_seminorm',
    'moment_body_energy',
    'VARIANTS',
    'ProjBodyResult',
    'build_frac_body',
    'frac_gauge',
    'frac_gauge_signed',
    'quasi_triangle_gap',
]
