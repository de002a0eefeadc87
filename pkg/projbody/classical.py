#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
经典 L^p 极投影体 ‖ξ‖^p = ∫ |⟨∇f(x), ξ⟩|^p dx 及 s → 1⁻ 极限扫描
"""

from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from core.errors import FieldError, ParamError
from core.fields import BaseField
from core.params import validate_params
from projbody.frac_body import ProjBodyResult, build_frac_body, frac_gauge, frac_gauge_signed, variant_sign
from quadrature.box_quad import signed_part
from quadrature.quad_config import QuadConfig
from quadrature.sphere_grid import SphereGrid
from starbody.star_body import StarBody, volume_power


class GradientSampler:
    """在盒子节点上缓存梯度，供多个方向复用"""

    def __init__(self, f: BaseField, quad: QuadConfig):
        if not f.is_smooth:
            raise FieldError(f"{f.describe()} 不光滑，经典投影体无定义")
        box = quad.box_for(f)
        self.box = box
        self.weights = box.weights
        self.grads = f.gradient(box.nodes)

    def gauge_power(self, xi, p: float, sign: Optional[str]) -> float:
        slope = self.grads @ np.asarray(xi, dtype=float)
        part = signed_part(slope, sign)
        return float(np.dot(self.weights, part ** p))


def classical_gauge(f: BaseField, xi, p: float, variant: str, quad: QuadConfig) -> float:
    """
    经典投影体规范函数 (∫ |⟨∇f, ξ⟩|^p)^{1/p}，或 (⟨∇f, ξ⟩)_± 版本

    Raises:
        FieldError: f 不光滑
    """
    sign = variant_sign(variant)
    return GradientSampler(f, quad).gauge_power(xi, p, sign) ** (1.0 / p)


def build_classical_body(f: BaseField, p: float, grid: SphereGrid, variant: str,
                         quad: QuadConfig) -> ProjBodyResult:
    """经典投影体 Π*_p f 及其非对称版本"""
    sign = variant_sign(variant)
    sampler = GradientSampler(f, quad)
    powers = np.array([sampler.gauge_power(node, p, sign) for node in grid.nodes])
    if np.any(powers <= 0.0):
        raise FieldError("梯度在某个方向上恒为零，经典投影体无界")
    gauges = powers ** (1.0 / p)
    return ProjBodyResult(
        body=StarBody(grid, 1.0 / gauges),
        variant=variant,
        gauges=gauges,
        p=p,
        quadrature={"box": sampler.box.to_dict(), "sphere": grid.to_dict()},
    )


def check_s_list(s_list: Sequence[float]) -> List[float]:
    values = [float(s) for s in s_list]
    if not values or any(b <= a for a, b in zip(values, values[1:])):
        raise ParamError(f"s_list 必须严格递增: {values}", "s_list")
    return values


def limit_scaling_report(f: BaseField, xi, p: float, s_list: Sequence[float], quad: QuadConfig,
                         grid: Optional[SphereGrid] = None, variant: str = "sym") -> List[Dict[str, Any]]:
    """
    s → 1⁻ 极限扫描：(p(1−s))^{1/p}·‖ξ‖_{Π_{s,p}f} 与经典 ‖ξ‖_{Π_p f} 比较，
    variant 为 plus / minus 时两边都取对应的非对称版本

    给出 grid 时同时给出体积形式 p(1−s)·vol(Π_{s,p}f)^{−ps/n} 与 vol(Π_p f)^{−p/n}

    Returns:
        每个 s 一行：s, scaled_gauge, classical_gauge, residual（相对残差），以及体积形式的对应列
    """
    sign = variant_sign(variant)
    values = check_s_list(s_list)
    n = f.n
    classical = classical_gauge(f, xi, p, variant, quad)
    classical_volume = None
    if grid is not None:
        classical_volume = volume_power(build_classical_body(f, p, grid, variant, quad).body, -p / n)

    rows = []
    for s in values:
        params = validate_params(n, s, p, sobolev=False)
        gauge = frac_gauge(f, xi, params, quad) if sign is None else frac_gauge_signed(f, xi, params, sign, quad)
        scaled = (p * (1.0 - s)) ** (1.0 / p) * gauge
        row: Dict[str, Any] = {
            "s": s,
            "variant": variant,
            "scaled_gauge": scaled,
            "classical_gauge": classical,
            "residual": abs(scaled - classical) / classical,
        }
        if grid is not None:
            body = build_frac_body(f, params, grid, variant, quad).body
            scaled_volume = p * (1.0 - s) * volume_power(body, -params.ps / n)
            row["scaled_volume_term"] = scaled_volume
            row["classical_volume_term"] = classical_volume
            row["volume_residual"] = abs(scaled_volume - classical_volume) / classical_volume
        rows.append(row)
    return rows
