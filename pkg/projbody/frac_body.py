#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
分数阶 L^p 极投影体
规范函数 ‖ξ‖^{ps} = ∫₀^∞ t^{−ps−1} ‖f(·+tξ) − f‖_p^p dt，ρ = 1/‖ξ‖
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from core.errors import ComputationError, FieldError, ParamError
from core.fields import BaseField
from core.params import FracParams
from quadrature.box_quad import ShiftedEnergyKernel
from quadrature.quad_config import QuadConfig
from quadrature.sphere_grid import SphereGrid
from quadrature.t_integral import t_integral
from starbody.star_body import StarBody
from utils.thread_manager import ThreadManager

logger = logging.getLogger(__name__)

VARIANTS = ("sym", "plus", "minus")
VARIANT_SIGN = {"sym": None, "plus": "+", "minus": "-"}


@dataclass
class ProjBodyResult:
    """投影体计算结果：星形体、各节点规范函数值、求积元数据和每个方向的耗时"""

    body: StarBody
    variant: str
    gauges: np.ndarray
    p: float
    params: Optional[FracParams] = None
    quadrature: Dict[str, Any] = field(default_factory=dict)
    elapsed: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def kind(self) -> str:
        return "classical" if self.params is None else "fractional"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "variant": self.variant,
            "p": self.p,
            "params": None if self.params is None else self.params.to_dict(),
            "body": self.body.to_dict(),
            "gauges": self.gauges.tolist(),
            "quadrature": self.quadrature,
        }

    def to_frame(self) -> pd.DataFrame:
        frame = self.body.to_frame()
        frame.insert(1, "gauge", self.gauges)
        return frame


def variant_sign(variant: str) -> Optional[str]:
    if variant not in VARIANT_SIGN:
        raise ParamError(f"未知的投影体类型: {variant}，可选 {', '.join(VARIANTS)}", "variant")
    return VARIANT_SIGN[variant]


def _nonzero_kernel(f: BaseField, quad: QuadConfig, p: float) -> ShiftedEnergyKernel:
    kernel = ShiftedEnergyKernel(f, quad.box_for(f))
    if not kernel.norm_power(p) > 0.0:
        raise FieldError("零函数的投影体无定义（规范函数为零）")
    return kernel


def _gauge_power(kernel: ShiftedEnergyKernel, v: np.ndarray, params: FracParams,
                 quad: QuadConfig, sign: Optional[str]) -> float:
    """‖v‖^{ps}：沿单位方向积分，再乘 |v|^{ps}；v = 0 时为 0"""
    length = float(np.linalg.norm(v))
    if length == 0.0:
        return 0.0
    u = v / length
    p = params.p
    if sign is None:
        # 大 t 极限 2‖f‖_p^p，能用闭式时取闭式
        grid = quad.tgrid(tail_coeff=kernel.energy(u * 4.0 * kernel.far_distance, p))
    else:
        grid = quad.tgrid()
    value = t_integral(lambda t: kernel.energy(t * u, p, sign), params, grid)
    if not np.isfinite(value) or value <= 0.0:
        raise ComputationError(f"规范函数计算结果无效: {value}")
    return value * length ** params.ps


def frac_gauge(f: BaseField, xi, params: FracParams, quad: QuadConfig) -> float:
    """
    对称分数阶投影体的规范函数

    Args:
        f: 非零函数
        xi: 方向
        params: (n, s, p)
        quad: 求积配置

    Returns:
        ‖ξ‖_{Π*_{s,p} f}
    """
    kernel = _nonzero_kernel(f, quad, params.p)
    v = np.asarray(xi, dtype=float)
    return _gauge_power(kernel, v, params, quad, None) ** (1.0 / params.ps)


def frac_gauge_signed(f: BaseField, xi, params: FracParams, sign: str, quad: QuadConfig) -> float:
    """非对称投影体 Π⁺ / Π⁻ 的规范函数，尾部系数由剖面最后一个十进位数值估计"""
    if sign not in ("+", "-"):
        raise ParamError(f"未知的符号: {sign!r}", "sign")
    kernel = _nonzero_kernel(f, quad, params.p)
    v = np.asarray(xi, dtype=float)
    return _gauge_power(kernel, v, params, quad, sign) ** (1.0 / params.ps)


def quasi_triangle_gap(f: BaseField, xi, eta, params: FracParams, quad: QuadConfig,
                       variant: str = "sym") -> Tuple[float, float]:
    """
    拟三角不等式 ‖ξ+η‖^{ps} ≤ 2^{p−1}(‖ξ‖^{ps} + ‖η‖^{ps})

    Returns:
        (左端, 右端)
    """
    sign = variant_sign(variant)
    kernel = _nonzero_kernel(f, quad, params.p)
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    lhs = _gauge_power(kernel, xi + eta, params, quad, sign)
    rhs = 2.0 ** (params.p - 1.0) * (
        _gauge_power(kernel, xi, params, quad, sign) + _gauge_power(kernel, eta, params, quad, sign)
    )
    return lhs, rhs


def radial_check_nodes(grid: SphereGrid) -> List[int]:
    """径向函数实际计算的方向：节点 0 与离坐标轴最远的节点"""
    diagonal = int(np.argmax(np.round(np.min(np.abs(grid.nodes), axis=1), 12)))
    return sorted({0, diagonal})


def _nodes_to_compute(f: BaseField, grid: SphereGrid, variant: str, symmetry: bool) -> List[int]:
    if symmetry and f.is_radial:
        return radial_check_nodes(grid)
    if symmetry and variant == "sym":
        anti = grid.antipodes
        return [i for i in range(grid.size) if i <= anti[i]]
    return list(range(grid.size))


def build_frac_body(f: BaseField, params: FracParams, grid: SphereGrid, variant: str,
                    quad: QuadConfig, symmetry: bool = True) -> ProjBodyResult:
    """
    构造分数阶投影体（对称、正部或负部）

    Args:
        f: 非零函数
        params: (n, s, p)
        grid: 球面网格
        variant: sym / plus / minus
        quad: 求积配置
        symmetry: 径向函数只算节点 0 与一个对角方向，对称版本复用对径点

    Returns:
        ProjBodyResult
    """
    sign = variant_sign(variant)
    if grid.n != params.n or f.n != params.n:
        raise ParamError("函数、网格与参数的维数不一致", "dimension")
    kernel = _nonzero_kernel(f, quad, params.p)
    indices = _nodes_to_compute(f, grid, variant, symmetry)

    def work(i: int) -> Tuple[float, float]:
        start = time.perf_counter()
        value = _gauge_power(kernel, grid.nodes[i], params, quad, sign)
        return value, time.perf_counter() - start

    started = time.perf_counter()
    outputs = ThreadManager().map_ordered(work, indices)

    powers = np.full(grid.size, np.nan)
    elapsed = np.zeros(grid.size)
    for i, (value, seconds) in zip(indices, outputs):
        powers[i] = value
        elapsed[i] = seconds
    radial = symmetry and f.is_radial
    computed = powers[indices] ** (1.0 / params.ps)
    if radial:
        # 未计算的方向取节点 0 的值，实际计算的方向保留各自的值
        powers[np.isnan(powers)] = powers[0]
    elif np.any(np.isnan(powers)):
        anti = grid.antipodes
        missing = np.isnan(powers)
        powers[missing] = powers[anti[missing]]

    gauges = powers ** (1.0 / params.ps)
    logger.debug("投影体 %s (n=%d, s=%g, p=%g): %d 个方向，用时 %.2fs",
                 variant, params.n, params.s, params.p, len(indices), time.perf_counter() - started)
    quadrature = {
        "box": kernel.q.to_dict(),
        "t_grid": quad.tgrid().to_dict(),
        "sphere": grid.to_dict(),
        "computed_nodes": len(indices),
    }
    if radial:
        # 实测的求积各向异性：已算方向上 max/min − 1
        quadrature["radial_spread"] = float(computed.max() / computed.min() - 1.0)
    return ProjBodyResult(
        body=StarBody(grid, 1.0 / gauges),
        variant=variant,
        gauges=gauges,
        p=params.p,
        params=params,
        quadrature=quadrature,
        elapsed=elapsed,
    )
