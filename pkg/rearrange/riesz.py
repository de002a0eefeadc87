#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Riesz 重排不等式
∬ f(x) k(x−y) g(y) dx dy ≤ ∬ f*(x) k*(x−y) g*(y) dx dy，n ≤ 2 时用同格距中点网格直接求和
"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from core.errors import FieldError
from core.fields import AffineMap, BaseField, FieldSpec, random_sl_shear
from quadrature.box_quad import BoxQuad
from quadrature.quad_config import QuadConfig
from rearrange.schwarz import symmetral

logger = logging.getLogger(__name__)

PAIR_CHUNK = 1 << 20


def _lattice(f: BaseField, h: float) -> Tuple[np.ndarray, np.ndarray, float]:
    """f 支撑盒上格距为 h 的中点网格，只保留 f ≠ 0 的节点"""
    count = max(2, int(math.ceil(2.0 * f.support_radius / h)))
    box = BoxQuad(f.n, 0.5 * count * h, 1, tuple(float(c) for c in f.support_center))
    nodes, cell = box.midpoint_grid(count)
    vals = f.value(nodes)
    keep = vals != 0.0
    return nodes[keep], vals[keep], cell


def triple_integral(f: BaseField, k: BaseField, g: BaseField, points: int) -> float:
    """∬ f(x) k(x−y) g(y) dx dy，x 网格覆盖 f 的支撑，y 网格覆盖 g 的支撑"""
    h = 2.0 * max(f.support_radius, g.support_radius) / points
    xs, fx, cell_x = _lattice(f, h)
    ys, gy, cell_y = _lattice(g, h)
    if len(xs) == 0 or len(ys) == 0:
        return 0.0
    total = 0.0
    rows = max(1, PAIR_CHUNK // len(ys))
    for start in range(0, len(xs), rows):
        xb = xs[start:start + rows]
        kv = k.value(xb[:, None, :] - ys[None, :, :])
        total += float(fx[start:start + rows] @ (kv @ gy))
    return total * cell_x * cell_y


def riesz_gap(f: BaseField, k: BaseField, g: BaseField, quad: QuadConfig) -> Tuple[float, float]:
    """
    Riesz 重排不等式两端

    Args:
        f, k, g: 非负函数，集合以示性函数给出
        quad: 求积配置

    Returns:
        (左端, 三个函数都对称化后的右端)

    Raises:
        QuadratureError: n = 3
        FieldError: 维数不一致或函数取负
    """
    if not f.n == k.n == g.n:
        raise FieldError("Riesz 三元组的维数不一致")
    points = quad.riesz_grid_points(f.n)
    lhs = triple_integral(f, k, g, points)
    rhs = triple_integral(symmetral(f, quad), symmetral(k, quad), symmetral(g, quad), points)
    logger.debug("Riesz: lhs=%.6g rhs=%.6g", lhs, rhs)
    return lhs, rhs


def random_indicator_triple(seed: int, n: int, kind: str = "ball_indicator") -> Tuple[FieldSpec, FieldSpec, FieldSpec]:
    """三个随机椭球（或随机鼓包）：各自的 SL 形状、半径与偏心位置"""
    rng = np.random.default_rng(seed)
    triple = []
    for i in range(3):
        shape = random_sl_shear(n, int(rng.integers(2 ** 31)))
        center = rng.uniform(-1.0, 1.0, size=n)
        radius = float(rng.uniform(0.5, 1.2))
        triple.append(FieldSpec(kind=kind, n=n, radius=radius, affine=AffineMap(shape.matrix, center)))
    return triple[0], triple[1], triple[2]


# 窗口端点的相对余量，退化三角形不算在窗口内
WINDOW_MARGIN = 1e-12


def in_burchard_window(alpha: float, beta: float, gamma: float) -> bool:
    """|α − β| < γ < α + β，两端都留相对余量"""
    margin = WINDOW_MARGIN * (alpha + beta)
    return abs(alpha - beta) + margin < gamma < alpha + beta - margin


def burchard_triple(n: int, alpha: float = 1.0, beta: float = 0.8, gamma: float = 1.2,
                    phi: Optional[AffineMap] = None, a: Optional[Sequence[float]] = None,
                    b: Optional[Sequence[float]] = None, seed: int = 0) -> Tuple[FieldSpec, FieldSpec, FieldSpec]:
    """
    共同椭球三元组 A = a + αD, B = b + βD, C = c + γD，c = a + b，D = φ(Bⁿ)

    Returns:
        (χ_C, χ_B, χ_A)，与 riesz_gap 的 (f, k, g) 顺序对应
    """
    if min(alpha, beta, gamma) <= 0:
        raise FieldError("椭球缩放系数必须为正")
    if phi is None:
        phi = random_sl_shear(n, seed)
    a_vec = np.array(a if a is not None else [0.3, -0.2, 0.1][:n], dtype=float)
    b_vec = np.array(b if b is not None else [-0.5, 0.4, 0.2][:n], dtype=float)

    def indicator(radius: float, offset: np.ndarray) -> FieldSpec:
        return FieldSpec(kind="ball_indicator", n=n, radius=radius, affine=AffineMap(phi.matrix, offset))

    return indicator(gamma, a_vec + b_vec), indicator(beta, b_vec), indicator(alpha, a_vec)
