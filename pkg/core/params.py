#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
参数与常数
(n, s, p) 三元组的校验，以及单位球体积、球面矩等公共常数
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import special

from core.errors import ParamError

SUPPORTED_DIMENSIONS = (1, 2, 3)


@dataclass(frozen=True)
class FracParams:
    """分数阶参数 (n, s, p)"""

    n: int
    s: float
    p: float

    @property
    def ps(self) -> float:
        return self.p * self.s

    @property
    def n_plus_ps(self) -> float:
        return self.n + self.ps

    @property
    def sobolev_exp(self) -> float:
        """Sobolev 指数 np/(n − ps)，ps ≥ n 时返回 inf"""
        if self.ps >= self.n:
            return math.inf
        return self.n * self.p / (self.n - self.ps)

    def with_s(self, s: float) -> "FracParams":
        """替换 s，不做 Sobolev 约束检查（极限扫描用）"""
        return validate_params(self.n, s, self.p, sobolev=False)

    def to_dict(self) -> dict:
        return {"n": self.n, "s": self.s, "p": self.p}


def validate_params(n: int, s: float, p: float, sobolev: bool = True) -> FracParams:
    """
    校验并构造 FracParams

    Args:
        n: 维数，取 1、2、3
        s: 分数阶，0 < s < 1
        p: 可积指数，1 < p < n/s
        sobolev: 为 False 时不检查 p < n/s（s → 1 的极限扫描允许 ps ≥ n）

    Returns:
        FracParams 实例

    Raises:
        ParamError: 每种违反条件对应不同的诊断信息
    """
    if int(n) != n or int(n) not in SUPPORTED_DIMENSIONS:
        raise ParamError(f"不支持的维数 n={n}，仅支持 1、2、3", "dimension")
    n = int(n)
    s = float(s)
    p = float(p)
    if not math.isfinite(s) or not 0.0 < s < 1.0:
        raise ParamError(f"参数无效: s 必须位于 (0, 1)，当前 s={s}", "s_range")
    if not math.isfinite(p) or p <= 1.0:
        raise ParamError(f"参数无效: p ≤ 1 (p={p})", "p_low")
    if sobolev and p >= n / s:
        raise ParamError(f"参数无效: p ≥ n/s (p={p}, n/s={n / s:g})", "p_high")
    return FracParams(n=n, s=s, p=p)


def omega_n(n: int) -> float:
    """n 维单位球体积 π^{n/2}/Γ(n/2 + 1)"""
    if n < 1:
        raise ParamError(f"维数必须为正整数，当前 n={n}", "dimension")
    return float(math.pi ** (n / 2.0) / special.gamma(n / 2.0 + 1.0))


def sphere_area(n: int) -> float:
    """S^{n−1} 的面积 n·ω_n（n = 1 时为计数测度下的 2）"""
    return n * omega_n(n)


def alpha_np(n: int, p: float, eta: Optional[np.ndarray] = None, grid=None) -> float:
    """
    球面绝对矩 ∫_{S^{n−1}} |⟨ξ, η⟩|^p dξ，用球面求积计算

    Args:
        n: 维数
        p: 指数，p ≥ 1
        eta: 参考方向（单位向量），默认 e₁；旋转不变性使结果与其无关
        grid: 球面网格，默认使用参考精度网格

    Returns:
        α_{n,p}
    """
    if p < 1:
        raise ParamError(f"参数无效: p < 1 (p={p})", "p_low")
    if n == 1:
        return 2.0

    from quadrature.sphere_grid import reference_sphere_grid

    if grid is None:
        grid = reference_sphere_grid(n)
    if eta is None:
        eta = np.zeros(n)
        eta[0] = 1.0
    eta = np.asarray(eta, dtype=float)
    eta = eta / np.linalg.norm(eta)
    return float(np.sum(grid.weights * np.abs(grid.nodes @ eta) ** p))


def alpha_np_exact(n: int, p: float) -> float:
    """α_{n,p} 的闭式 2π^{(n−1)/2} Γ((p+1)/2) / Γ((n+p)/2)，用于交叉检验"""
    return float(
        2.0 * math.pi ** ((n - 1) / 2.0) * special.gamma((p + 1.0) / 2.0)
        / special.gamma((n + p) / 2.0)
    )

