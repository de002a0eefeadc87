#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
各向异性分数阶能量
生产路线：n·Ṽ_{−ps}(K, Π*_{s,p} f)；验证路线：n ≤ 2 时的蛮力二重积分
"""

import logging
from typing import Optional

import numpy as np

from core.errors import ParamError
from core.fields import BaseField
from core.params import FracParams
from projbody.classical import GradientSampler, build_classical_body
from projbody.frac_body import build_frac_body, variant_sign
from quadrature.box_quad import BoxQuad, signed_part
from quadrature.quad_config import QuadConfig
from starbody.star_body import StarBody, ball, dual_mixed_volume, gauge_eval, moment_body_support

logger = logging.getLogger(__name__)

# 验证网格相对有效支撑的放大系数
ORACLE_MARGIN = 1.25
PAIR_CHUNK = 1 << 20


def anisotropic_energy(f: BaseField, K: StarBody, params: FracParams, quad: QuadConfig,
                       variant: str = "sym", body: Optional[StarBody] = None) -> float:
    """
    ∬ |f(x) − f(y)|^p / ‖x − y‖_K^{n+ps} dx dy = n·Ṽ_{−ps}(K, Π*_{s,p} f)

    Args:
        f: 非零函数
        K: 星形体（决定球面网格）
        params: (n, s, p)
        quad: 求积配置
        variant: sym / plus / minus，非对称版本分子取 (f(x) − f(y))_±^p
        body: 已算好的投影体（须在 K 的网格上），None 时现算
    """
    if body is None:
        body = build_frac_body(f, params, K.grid, variant, quad).body
    return K.n * dual_mixed_volume(K, body, -params.ps)


def fractional_seminorm(f: BaseField, params: FracParams, quad: QuadConfig, variant: str = "sym") -> float:
    """欧氏分数阶半范数的 p 次方（K = Bⁿ）"""
    return anisotropic_energy(f, ball(quad.sphere(f.n)), params, quad, variant)


def _exit_distance(points: np.ndarray, dirs: np.ndarray, center: np.ndarray, half: float) -> np.ndarray:
    """从盒内点沿各方向到盒子边界的距离，形状 (点数, 方向数)"""
    with np.errstate(divide="ignore", invalid="ignore"):
        wall = center[None, :] + half * np.sign(dirs)
        steps = (wall[None, :, :] - points[:, None, :]) / dirs[None, :, :]
    steps = np.where(np.isfinite(steps) & (steps >= 0.0), steps, np.inf)
    return np.maximum(steps.min(axis=2), 1e-300)


def direct_double_energy(f: BaseField, K: StarBody, params: FracParams, quad: QuadConfig,
                         variant: str = "sym") -> float:
    """
    蛮力二重积分 ∬ |f(x) − f(y)|^p / ‖x − y‖_K^{n+ps} dx dy（仅 n ≤ 2，用作验证）

    x、y 两套中点网格相差半个格距，对角线 x = y 从不被采样；
    一端落在网格盒外的部分按射线出盒距离解析积分。
    """
    sign = variant_sign(variant)
    n = f.n
    points = quad.oracle_grid_points(n)
    if K.n != n:
        raise ParamError("星形体与函数维数不一致", "dimension")

    half = ORACLE_MARGIN * f.oracle_radius
    center = np.asarray(f.support_center, dtype=float)
    box = BoxQuad(n, half, 1, tuple(center))
    xs, cell = box.midpoint_grid(points)
    ys, _ = box.midpoint_grid(points, shift=0.5)
    fx = f.value(xs)
    fy = f.value(ys)
    if not (np.any(fx) or np.any(fy)):
        return 0.0

    exponent = params.n_plus_ps
    p = params.p
    inner = 0.0
    rows = max(1, PAIR_CHUNK // len(ys))
    for start in range(0, len(xs), rows):
        xb = xs[start:start + rows]
        diff = signed_part(fx[start:start + rows, None] - fy[None, :], sign) ** p
        if not np.any(diff):
            continue
        z = (xb[:, None, :] - ys[None, :, :]).reshape(-1, n)
        gauge = gauge_eval(K, z).reshape(len(xb), len(ys))
        inner += float(np.sum(diff * gauge ** (-exponent)))

    # 盒外部分: ∫_{y ∉ box} ‖x − y‖_K^{−n−ps} dy = (1/ps) Σ_η w ρ_K(∓η)^{n+ps} d(x, η)^{−ps}
    grid = K.grid
    dist = _exit_distance(xs, grid.nodes, center, half) ** (-params.ps)
    rho_out = grid.weights * K.rho[grid.antipodes] ** exponent
    rho_in = grid.weights * K.rho ** exponent
    spill_x = dist @ rho_out / params.ps
    spill_y = dist @ rho_in / params.ps
    outer = float(np.dot(signed_part(fx, sign) ** p, spill_x) + np.dot(signed_part(-fx, sign) ** p, spill_y))
    return cell * cell * inner + cell * outer


def classical_limit_energy(f: BaseField, K: StarBody, p: float, quad: QuadConfig, variant: str = "sym") -> float:
    """n·Ṽ_{−p}(K, Π*_p f)，即 s → 1⁻ 时 p(1−s)·能量的极限"""
    body = build_classical_body(f, p, K.grid, variant, quad).body
    return K.n * dual_mixed_volume(K, body, -p)


def moment_body_energy(f: BaseField, L: StarBody, p: float, quad: QuadConfig) -> float:
    """∫ h_{ΓL}(∇f(x))^p dx，与 n·Ṽ_{−p}(L, Π*_p f) 相等"""
    sampler = GradientSampler(f, quad)
    support = moment_body_support(L, p, sampler.grads)
    return float(np.dot(sampler.weights, support ** p))
