#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
各向异性 Pólya–Szegő 不等式的两端
"""

from typing import Tuple

from core.errors import ParamError
from core.fields import BaseField
from core.params import FracParams
from projbody.energy import anisotropic_energy
from quadrature.quad_config import QuadConfig
from rearrange.schwarz import symmetral
from starbody.star_body import StarBody, schwarz_ball


def polya_szego_gap(f: BaseField, K: StarBody, params: FracParams, variant: str,
                    quad: QuadConfig) -> Tuple[float, float]:
    """
    (f 关于 K 的能量, f* 关于 K* 的能量)，应有 左端 ≥ 右端

    Args:
        f: 非负非零函数
        K: 星形体
        params: (n, s, p)
        variant: sym 或 plus
        quad: 求积配置

    Raises:
        FieldError: f 取负值
        ParamError: variant 不是 sym / plus
    """
    if variant not in ("sym", "plus"):
        raise ParamError(f"Pólya–Szegő 只支持 sym / plus，当前 {variant}", "variant")
    f_star = symmetral(f, quad)
    lhs = anisotropic_energy(f, K, params, quad, variant)
    rhs = anisotropic_energy(f_star, schwarz_ball(K), params, quad, variant)
    return lhs, rhs
