#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
奇异 t 积分 ∫₀^∞ t^{−ps−1} φ(t) dt

[t_min, t_max] 上做对数代换的分段 Gauss–Legendre（每个十进位一段），
t_min 以下用幂律外推的解析头部修正，t_max 以上用 tail_coeff · t_max^{−ps}/(ps) 的解析尾部。
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Tuple

import numpy as np

from core.errors import ComputationError, QuadratureError
from core.params import FracParams

Profile = Callable[[float], float]


@dataclass(frozen=True)
class TGrid:
    """
    t 积分网格

    Attributes:
        t_min, t_max: 截断区间
        points: 对数节点总数
        low_exponent: 被积函数在 0 附近的幂律阶（例如光滑函数为 p(1−s)−1）；None 时由剖面估计
        tail_coeff: 剖面在 ∞ 处的极限；None 时取最后一个十进位上剖面的平均值
    """

    t_min: float = 1.0e-4
    t_max: float = 1.0e4
    points: int = 200
    low_exponent: Optional[float] = None
    tail_coeff: Optional[float] = None

    def __post_init__(self):
        if not (self.t_min > 0 and math.isfinite(self.t_max) and self.t_min < self.t_max):
            raise QuadratureError(f"t 网格需要 0 < t_min < t_max，当前 [{self.t_min}, {self.t_max}]")
        if int(self.points) != self.points or self.points < 2:
            raise QuadratureError(f"t 网格节点数必须为不小于 2 的整数，当前 {self.points}")
        if self.low_exponent is not None and not self.low_exponent > -1.0:
            raise QuadratureError(f"low_exponent 必须大于 −1（0 处可积），当前 {self.low_exponent}")
        if self.tail_coeff is not None and not self.tail_coeff >= 0.0:
            raise QuadratureError(f"tail_coeff 必须非负，当前 {self.tail_coeff}")

    @cached_property
    def nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        """(t 节点, 关于 u = ln t 的权重)"""
        u_min, u_max = math.log(self.t_min), math.log(self.t_max)
        panels = max(1, int(round(math.log10(self.t_max / self.t_min))))
        per_panel = max(2, int(math.ceil(self.points / panels)))
        x, w = np.polynomial.legendre.leggauss(per_panel)
        edges = np.linspace(u_min, u_max, panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        u = (mid[:, None] + half[:, None] * x[None, :]).reshape(-1)
        wu = (half[:, None] * w[None, :]).reshape(-1)
        t = np.exp(u)
        t.setflags(write=False)
        wu.setflags(write=False)
        return t, wu

    def to_dict(self) -> dict:
        return {
            "t_min": self.t_min,
            "t_max": self.t_max,
            "points": self.points,
            "low_exponent": self.low_exponent,
            "tail_coeff": self.tail_coeff,
        }


@dataclass(frozen=True)
class TIntegralResult:
    """t 积分的三部分"""

    body: float
    head: float
    tail: float
    head_order: float
    tail_coeff: float

    @property
    def total(self) -> float:
        return self.body + self.head + self.tail


def _head_order(p0: float, p1: float, params: FracParams, grid: TGrid) -> float:
    """
    剖面在 0 附近的幂律阶 a：φ(t) ≈ φ(t_min)(t/t_min)^a

    估计值限制在 [1, p]：目录函数为 Lipschitz（阶 p）或指示函数（阶 1）
    """
    if grid.low_exponent is not None:
        return grid.low_exponent + params.ps + 1.0
    if p1 <= 0.0:
        return params.p
    return min(max(math.log2(p1 / p0), 1.0), max(params.p, 1.0))


def t_integral_parts(profile: Profile, params: FracParams, grid: TGrid) -> TIntegralResult:
    """
    计算 ∫₀^∞ t^{−ps−1} profile(t) dt 并返回各部分

    Args:
        profile: 非负剖面 t ↦ φ(t)
        params: 分数阶参数
        grid: t 网格

    Returns:
        TIntegralResult

    Raises:
        ComputationError: 剖面在 0 附近衰减不够快，积分发散
    """
    ps = params.ps
    t, wu = grid.nodes
    vals = np.array([profile(float(ti)) for ti in t])
    if np.any(~np.isfinite(vals)):
        raise ComputationError("t 剖面出现非有限值")
    # dt = t du，因此被积函数为 t^{−ps} φ(t)
    body = float(np.dot(wu, t ** (-ps) * vals))

    p0 = float(profile(grid.t_min))
    head = 0.0
    order = math.nan
    if p0 > 0.0:
        p1 = float(profile(2.0 * grid.t_min))
        order = _head_order(p0, p1, params, grid)
        if order <= ps:
            raise ComputationError(
                f"t 积分在 0 处发散: 剖面阶 {order:.3f} ≤ ps = {ps:.3f}（函数不属于 W^{{s,p}}）"
            )
        head = p0 * grid.t_min ** (-ps) / (order - ps)

    if grid.tail_coeff is not None:
        coeff = grid.tail_coeff
    else:
        last = t >= grid.t_max / 10.0
        coeff = float(np.mean(vals[last]))
    tail = coeff * grid.t_max ** (-ps) / ps
    return TIntegralResult(body=body, head=head, tail=tail, head_order=order, tail_coeff=coeff)


def t_integral(profile: Profile, params: FracParams, grid: TGrid) -> float:
    """∫₀^∞ t^{−ps−1} profile(t) dt"""
    return t_integral_parts(profile, params, grid).total


def one_dim_limit(phi: Profile, s: float, grid: TGrid) -> float:
    """
    (1−s) ∫₀^∞ t^{−s} φ(t) dt，当 s → 1⁻ 时趋于 φ(0)

    头部按 φ 在 0 附近取常数处理，尾部按最后两个采样点拟合的幂律衰减处理。

    Args:
        phi: 有界且在 ∞ 处衰减的函数
        s: 0 < s < 1
        grid: t 网格
    """
    if not 0.0 < s < 1.0:
        raise QuadratureError(f"s 必须位于 (0, 1)，当前 {s}")
    t, wu = grid.nodes
    vals = np.array([phi(float(ti)) for ti in t])
    body = float(np.dot(wu, t ** (1.0 - s) * vals))
    head = float(phi(grid.t_min)) * grid.t_min ** (1.0 - s) / (1.0 - s)

    tail = 0.0
    end = float(phi(grid.t_max))
    if end != 0.0:
        before = float(phi(grid.t_max / 2.0))
        decay = math.log2(before / end) if before / end > 0 else 0.0
        if decay + s - 1.0 <= 0.0:
            raise ComputationError(f"φ 在 ∞ 处衰减过慢 (阶 {decay:.3f})，积分发散")
        tail = end * grid.t_max ** (1.0 - s) / (decay + s - 1.0)
    return (1.0 - s) * (body + head + tail)
