#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Schwarz 对称化
由水平集测度 vol{f ≥ t} 反解径向剖面 f*，并把 f* 包装成可逐点求值的径向函数
"""

import math
from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from core.errors import FieldError
from core.fields import BaseField
from core.params import omega_n, sphere_area
from quadrature.box_quad import BoxQuad
from quadrature.quad_config import QuadConfig

# 阈值在 max f · [10⁻⁴, 1] 上几何分布
LEVEL_FLOOR = 1.0e-4
# 剖面末端值不超过峰值的该比例时视为连续（可求梯度）
CONTINUOUS_EDGE = 1.0e-3


class RadialProfile:
    """径向剖面：f*(x) = values 在 |x| 处的单调插值，最后一个半径之外为 0"""

    def __init__(self, n: int, radii: Sequence[float], values: Sequence[float]):
        """
        Args:
            n: 维数
            radii: 从 0 开始严格递增的半径
            values: 非增的非负值

        Raises:
            FieldError: 数据不满足单调性
        """
        r = np.array(radii, dtype=float)
        v = np.array(values, dtype=float)
        if r.ndim != 1 or r.shape != v.shape or r.size < 2:
            raise FieldError("径向剖面至少需要两个点，且半径与取值长度一致")
        if r[0] != 0.0 or np.any(np.diff(r) <= 0.0):
            raise FieldError("径向剖面的半径必须从 0 开始严格递增")
        if np.any(v < 0.0) or np.any(np.diff(v) > 0.0):
            raise FieldError("径向剖面的取值必须非负且非增")
        r.setflags(write=False)
        v.setflags(write=False)
        self.n = n
        self.radii = r
        self.values = v
        self._interp = PchipInterpolator(r, v, extrapolate=False)
        self._slope = self._interp.derivative()

    @property
    def peak(self) -> float:
        return float(self.values[0])

    @property
    def outer_radius(self) -> float:
        return float(self.radii[-1])

    def evaluate(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        out = self._interp(np.clip(r, 0.0, None))
        return np.where(r <= self.radii[-1], np.nan_to_num(out), 0.0)

    def derivative(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        out = self._slope(np.clip(r, 0.0, None))
        return np.where(r < self.radii[-1], np.nan_to_num(out), 0.0)

    def level_radius(self, t: float) -> float:
        """sup{r : f*(r) ≥ t}"""
        v = self.values
        if t > v[0]:
            return 0.0
        if t <= v[-1]:
            return self.outer_radius
        k = int(np.nonzero(v >= t)[0][-1])
        lo, hi = self.radii[k], self.radii[k + 1]
        if v[k] == t:
            return float(lo)
        return float(brentq(lambda r: float(self._interp(r)) - t, lo, hi, xtol=1e-14, rtol=1e-13))

    def level_measure(self, t: float) -> float:
        return omega_n(self.n) * self.level_radius(t) ** self.n

    def lp_norm_power(self, p: float, nodes: int = 8) -> float:
        """∫ |f*|^p dx = nω_n ∫₀^R r^{n−1} f*(r)^p dr，逐段 Gauss–Legendre"""
        x, w = np.polynomial.legendre.leggauss(nodes)
        lo, hi = self.radii[:-1], self.radii[1:]
        half = 0.5 * (hi - lo)
        r = (0.5 * (hi + lo))[:, None] + half[:, None] * x[None, :]
        vals = r ** (self.n - 1) * np.abs(self.evaluate(r)) ** p
        return float(sphere_area(self.n) * np.sum(half[:, None] * w[None, :] * vals))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"radius": self.radii, "value": self.values})

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "radii": self.radii.tolist(), "values": self.values.tolist()}


class ProfileField(BaseField):
    """把径向剖面包装成可逐点求值的函数，重新进入投影体计算"""

    def __init__(self, profile: RadialProfile):
        self.profile = profile
        self.n = profile.n

    def value(self, x: np.ndarray) -> np.ndarray:
        return self.profile.evaluate(np.linalg.norm(np.asarray(x, dtype=float), axis=-1))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        if not self.is_smooth:
            raise FieldError("剖面在外半径处跳变，拒绝计算梯度")
        pts = np.asarray(x, dtype=float)
        r = np.linalg.norm(pts, axis=-1)
        safe = np.where(r > 0.0, r, 1.0)
        coeff = np.where(r > 0.0, self.profile.derivative(r) / safe, 0.0)
        return coeff[..., None] * pts

    @property
    def is_smooth(self) -> bool:
        return self.profile.values[-1] <= CONTINUOUS_EDGE * self.profile.peak

    @property
    def is_radial(self) -> bool:
        return True

    @property
    def is_nonnegative(self) -> bool:
        return True

    @property
    def support_center(self) -> np.ndarray:
        return np.zeros(self.n)

    @property
    def support_radius(self) -> float:
        return self.profile.outer_radius

    def exact_superlevel_measure(self, t: float) -> Optional[float]:
        if t <= 0:
            return None
        return self.profile.level_measure(t)

    def to_dict(self) -> Dict[str, Any]:
        data = self.profile.to_dict()
        data["kind"] = "profile"
        return data


class LevelSampler:
    """均匀中点网格上的函数值与梯度，供多个阈值复用"""

    def __init__(self, f: BaseField, quad: QuadConfig):
        points = quad.level_grid_points(f.n)
        box = BoxQuad(f.n, float(f.support_radius), 1, tuple(float(c) for c in f.support_center))
        nodes, cell = box.midpoint_grid(points)
        self.f = f
        self.cell = cell
        self.values = f.value(nodes)
        self.peak = float(max(self.values.max(), f.value(np.asarray(f.support_center)[None, :])[0]))
        self.floor = float(self.values.min())
        self.width = None
        if f.is_smooth:
            h = 2.0 * box.half_extent / points
            grads = f.gradient(nodes)
            norm = np.linalg.norm(grads, axis=1)
            flat = norm < 1e-14
            safe = np.where(flat, 1.0, norm)
            # 单元在法向上的投影宽度 h·Σ|nᵢ|
            self.width = np.where(flat, 0.0, h * np.abs(grads).sum(axis=1) / safe)
            self.slope = np.where(flat, np.inf, norm)

    def measure(self, t: float) -> float:
        exact = self.f.exact_superlevel_measure(t)
        if exact is not None:
            return exact
        if self.width is None:
            return self.cell * float(np.count_nonzero(self.values >= t))
        # 平滑 Heaviside：带符号距离 (f − t)/|∇f| 在单元宽度上线性过渡
        dist = (self.values - t) / self.slope
        with np.errstate(divide="ignore", invalid="ignore"):
            ramp = np.clip(0.5 + dist / self.width, 0.0, 1.0)
        frac = np.where(self.width > 0.0, ramp, (self.values >= t).astype(float))
        return self.cell * float(np.sum(frac))


def superlevel_measure(f: BaseField, t: float, quad: QuadConfig) -> float:
    """
    vol{f ≥ t}

    Args:
        f: 函数
        t: 阈值，t > 0
        quad: 求积配置

    Raises:
        FieldError: t ≤ 0
    """
    if not t > 0:
        raise FieldError(f"水平集阈值必须为正，当前 t={t}")
    exact = f.exact_superlevel_measure(t)
    if exact is not None:
        return exact
    return LevelSampler(f, quad).measure(t)


def schwarz_rearrange(f: BaseField, level_count: int, quad: QuadConfig) -> RadialProfile:
    """
    Schwarz 对称化：对每个阈值 t_k 取 r_k = (vol{f ≥ t_k}/ω_n)^{1/n}，反解 t ↦ r 得到剖面

    Args:
        f: 非负函数
        level_count: 阈值个数
        quad: 求积配置

    Raises:
        FieldError: f 取负值或为零函数
    """
    if level_count < 2:
        raise FieldError(f"level_count 至少为 2，当前 {level_count}")
    if isinstance(f, ProfileField):
        # 已经是径向递减函数，对称化不改变它
        return f.profile
    sampler = LevelSampler(f, quad)
    if not f.is_nonnegative and sampler.floor < -1e-12 * max(abs(sampler.peak), 1e-300):
        raise FieldError("Schwarz 对称化要求函数非负")
    peak = sampler.peak
    if not peak > 0.0:
        raise FieldError("零函数没有非平凡的对称化")

    n = f.n
    thresholds = peak * np.geomspace(LEVEL_FLOOR, 1.0, level_count)
    radii = np.array([(sampler.measure(float(t)) / omega_n(n)) ** (1.0 / n) for t in thresholds])

    # 从高阈值到低阈值扫描，半径严格递增的点才保留；同一半径保留较大的阈值
    keep_r = [0.0]
    keep_v = [peak]
    tol = 1e-12 * max(radii.max(), 1.0)
    for r, t in zip(radii[::-1], thresholds[::-1]):
        if r > keep_r[-1] + tol:
            keep_r.append(float(r))
            keep_v.append(float(min(t, keep_v[-1])))
    if len(keep_r) < 2:
        raise FieldError("水平集测度全为零，无法构造剖面")
    return RadialProfile(n, keep_r, keep_v)


def symmetral(f: BaseField, quad: QuadConfig) -> ProfileField:
    """f* 作为可求值函数"""
    return ProfileField(schwarz_rearrange(f, quad.level_count, quad))


def profile_lp_norm(profile: RadialProfile, p: float) -> float:
    """‖f*‖_p"""
    return profile.lp_norm_power(p) ** (1.0 / p)


def equimeasurability_gap(f: BaseField, profile: RadialProfile, quad: QuadConfig,
                          samples: int = 16) -> float:
    """在若干阈值上比较 vol{f ≥ t} 与剖面的水平集测度，返回最大相对偏差"""
    sampler = LevelSampler(f, quad)
    worst = 0.0
    for t in profile.peak * np.geomspace(10 * LEVEL_FLOOR, 0.9, samples):
        direct = sampler.measure(float(t))
        if direct <= 0.0:
            continue
        worst = max(worst, abs(profile.level_measure(float(t)) - direct) / direct)
    return worst if math.isfinite(worst) else math.inf
