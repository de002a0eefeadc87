#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
重排包
Schwarz 对称化、Riesz 重排不等式与 Pólya–Szegő 比较
"""

from rearrange.polya_szego import polya_szego_gap
from rearrange.riesz import burchard_triple, in_burchard_window, random_indicator_triple, riesz_gap, triple_integral
from rearrange.schwarz import (
    ProfileField,
    RadialProfile,
    equimeasurability_gap,
    profile_lp_norm,
    schwarz_rearrange,
    superlevel_measure,
    symmetral,
)

__all__ = [
    'polya_szego_gap',
    'burchard_triple',
    'in_burchard_window',
    'random_indicator_triple',
    'riesz_gap',
    'triple_integral',
    'ProfileField',
    'RadialProfile',
    'equimeasurability_gap',
    'profile_lp_norm',
    'schwarz_rearrange',
    'superlevel_measure',
    'symmetral',
]
