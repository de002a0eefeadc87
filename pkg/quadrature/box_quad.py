#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
ℝⁿ 上的盒子求积
张量积 Gauss–Legendre 规则，以及基于它的平移能量 ∫ |f(x+z) − f(x)|^p dx
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from core.errors import QuadratureError
from core.fields import BaseField

SIGNS = ("+", "-")


@dataclass(frozen=True)
class BoxQuad:
    """盒子 center + [−L, L]ⁿ 上的张量积 Gauss–Legendre 规则"""

    n: int
    half_extent: float
    points_per_axis: int
    center: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise QuadratureError(f"不支持的维数 n={self.n}")
        if not self.half_extent > 0:
            raise QuadratureError(f"half_extent 必须为正，当前 {self.half_extent}")
        if int(self.points_per_axis) != self.points_per_axis or self.points_per_axis < 1:
            raise QuadratureError(f"points_per_axis 必须为正整数，当前 {self.points_per_axis}")
        if len(self.center) == 0:
            object.__setattr__(self, "center", (0.0,) * self.n)
        elif len(self.center) != self.n:
            raise QuadratureError("盒子中心维数不一致")

    @cached_property
    def nodes_and_weights(self) -> Tuple[np.ndarray, np.ndarray]:
        x1, w1 = np.polynomial.legendre.leggauss(int(self.points_per_axis))
        x1 = x1 * self.half_extent
        w1 = w1 * self.half_extent
        axes = np.meshgrid(*([x1] * self.n), indexing="ij")
        nodes = np.stack([a.reshape(-1) for a in axes], axis=1) + np.asarray(self.center)
        weights = np.ones(1)
        for _ in range(self.n):
            weights = np.multiply.outer(weights, w1).reshape(-1)
        nodes.setflags(write=False)
        weights.setflags(write=False)
        return nodes, weights

    @property
    def nodes(self) -> np.ndarray:
        return self.nodes_and_weights[0]

    @property
    def weights(self) -> np.ndarray:
        return self.nodes_and_weights[1]

    def contains(self, x: np.ndarray) -> np.ndarray:
        """点是否位于闭盒子内"""
        offset = np.abs(np.asarray(x) - np.asarray(self.center))
        return np.all(offset <= self.half_extent, axis=-1)

    def midpoint_grid(self, points: int, shift: float = 0.0) -> Tuple[np.ndarray, float]:
        """
        均匀中点网格（蛮力验证和水平集测度使用）

        Args:
            points: 每轴格点数
            shift: 以格距为单位的整体偏移

        Returns:
            (格点, 单元体积)
        """
        h = 2.0 * self.half_extent / points
        x1 = -self.half_extent + h * (np.arange(points) + 0.5 + shift)
        axes = np.meshgrid(*([x1] * self.n), indexing="ij")
        nodes = np.stack([a.reshape(-1) for a in axes], axis=1) + np.asarray(self.center)
        return nodes, h ** self.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "half_extent": self.half_extent,
            "points_per_axis": self.points_per_axis,
            "center": list(self.center),
        }


def box_for_field(f: BaseField, points_per_axis: int, half_extent: Optional[float] = None) -> BoxQuad:
    """
    以函数支撑为准构造盒子

    Args:
        f: 函数
        points_per_axis: 每轴节点数
        half_extent: 显式给定时使用以原点为中心的 [−L, L]ⁿ
    """
    if half_extent is not None:
        return BoxQuad(f.n, float(half_extent), points_per_axis)
    return BoxQuad(f.n, float(f.support_radius), points_per_axis, tuple(float(c) for c in f.support_center))


def integrate_box(g: Callable[[np.ndarray], np.ndarray], q: BoxQuad) -> float:
    """
    张量积 Gauss–Legendre 积分

    Args:
        g: 在形状 (m, n) 的节点上返回 (m,) 数组的被积函数
        q: 盒子规则
    """
    nodes, weights = q.nodes_and_weights
    return float(np.dot(weights, g(nodes)))


def lp_norm(f: BaseField, p: float, q: BoxQuad) -> float:
    """‖f‖_p"""
    return integrate_box(lambda x: np.abs(f.value(x)) ** p, q) ** (1.0 / p)


def signed_part(values: np.ndarray, sign: Optional[str]) -> np.ndarray:
    """|a|，a₊ 或 a₋"""
    if sign is None:
        return np.abs(values)
    if sign == "+":
        return np.maximum(values, 0.0)
    if sign == "-":
        return np.maximum(-values, 0.0)
    raise QuadratureError(f"未知的符号: {sign!r}，可选 '+' 或 '-'")


class ShiftedEnergyKernel:
    """
    固定函数与盒子，对多个平移量 z 计算 ∫ |f(x+z) − f(x)|^p dx

    盒子覆盖 f 的支撑，于是
        ∫ |f(x+z) − f(x)|^p = Σ_box w |f(x+z) − f(x)|^p + Σ_box w |f(x)|^p · 1[x − z ∉ box]
    第二项是 x+z 落在盒子内、x 落在盒子外的部分。节点上的 f 值只算一次。
    """

    def __init__(self, f: BaseField, q: BoxQuad):
        self.f = f
        self.q = q
        nodes, weights = q.nodes_and_weights
        self.nodes = nodes
        self.weights = weights
        self.base = f.value(nodes)
        self.far_distance = 2.0 * q.half_extent * np.sqrt(f.n)

    def norm_power(self, p: float, sign: Optional[str] = None) -> float:
        """‖f‖_p^p，或 ‖f₊‖_p^p / ‖f₋‖_p^p"""
        vals = signed_part(self.base, sign)
        return float(np.dot(self.weights, vals ** p))

    def energy(self, z: Sequence[float], p: float, sign: Optional[str] = None) -> float:
        """
        平移能量

        Args:
            z: 平移向量
            p: 指数
            sign: None 为对称版本，'+' / '-' 为 (f(x+z) − f(x))_± 版本
        """
        z = np.asarray(z, dtype=float)
        exact = self.f.overlap_energy(z, p, sign)
        if exact is not None:
            return exact
        if not np.any(z):
            return 0.0

        if np.linalg.norm(z) > self.far_distance:
            # 支撑不相交：能量拆成两份范数
            if sign is None:
                return 2.0 * self.norm_power(p)
            return self.norm_power(p, "+") + self.norm_power(p, "-")

        shifted = self.f.value(self.nodes + z)
        diff = signed_part(shifted - self.base, sign)
        inner = np.dot(self.weights, diff ** p)
        outside = ~self.q.contains(self.nodes - z)
        # y = x+z 在盒子内而 x 在盒子外时 f(x) = 0，贡献为 f(y)_±
        spill = signed_part(self.base[outside], sign)
        return float(inner + np.dot(self.weights[outside], spill ** p))


def shifted_energy(f: BaseField, z, p: float, q: BoxQuad) -> float:
    """∫ |f(x+z) − f(x)|^p dx"""
    return ShiftedEnergyKernel(f, q).energy(z, p)


def shifted_energy_signed(f: BaseField, z, p: float, sign: str, q: BoxQuad) -> float:
    """∫ (f(x+z) − f(x))_±^p dx"""
    if sign not in SIGNS:
        raise QuadratureError(f"未知的符号: {sign!r}，可选 '+' 或 '-'")
    return ShiftedEnergyKernel(f, q).energy(z, p, sign)
