#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
星形体
用共享球面网格上的径向函数值表示星形体，并提供对偶 Brunn–Minkowski 理论的基本运算
"""

import math
from typing import Callable, Optional, Sequence, Union

import numpy as np
import pandas as pd

from core.errors import GeometryError
from core.fields import AffineMap
from core.params import omega_n
from quadrature.sphere_grid import SphereGrid, sphere_grid

RANDOM_CLIP = (0.2, 5.0)


class StarBody:
    """星形体：grid 上每个节点的径向函数值 ρ"""

    def __init__(self, grid: SphereGrid, rho: Sequence[float]):
        """
        Args:
            grid: 球面网格
            rho: 每个节点的径向函数值，必须有限且为正

        Raises:
            GeometryError: ρ 长度不符或存在非正、非有限值
        """
        values = np.array(rho, dtype=float).reshape(-1)
        if values.shape != (grid.size,):
            raise GeometryError(f"ρ 长度 {values.size} 与网格节点数 {grid.size} 不一致")
        if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
            raise GeometryError("径向函数必须处处有限且为正")
        values.setflags(write=False)
        self.grid = grid
        self.rho = values

    @property
    def n(self) -> int:
        return self.grid.n

    def dilate(self, factor: float) -> "StarBody":
        if not factor > 0:
            raise GeometryError(f"伸缩因子必须为正，当前 {factor}")
        return StarBody(self.grid, factor * self.rho)

    def to_dict(self) -> dict:
        return {"n": self.n, "level": self.grid.level, "rho": self.rho.tolist()}

    @classmethod
    def from_dict(cls, data: dict, grid: Optional[SphereGrid] = None) -> "StarBody":
        if grid is None:
            grid = sphere_grid(int(data["n"]), int(data["level"]))
        return cls(grid, data["rho"])

    def to_frame(self) -> pd.DataFrame:
        """CSV 用的表格 (node, weight, rho, 坐标)"""
        frame = pd.DataFrame({"node": np.arange(self.grid.size), "weight": self.grid.weights, "rho": self.rho})
        for axis in range(self.n):
            frame[f"xi_{axis}"] = self.grid.nodes[:, axis]
        return frame


def _same_grid(K: StarBody, L: StarBody) -> None:
    if not K.grid.same_as(L.grid):
        raise GeometryError("两个星形体的球面网格不一致")


def ball(grid: SphereGrid, radius: float = 1.0) -> StarBody:
    return StarBody(grid, np.full(grid.size, float(radius)))


def from_gauge(grid: SphereGrid, gauge: Callable[[np.ndarray], np.ndarray]) -> StarBody:
    """由规范函数构造：ρ(ξ) = 1/‖ξ‖"""
    return StarBody(grid, 1.0 / np.asarray(gauge(grid.nodes), dtype=float))


def ellipsoid(grid: SphereGrid, semi_axes: Sequence[float], rotation: Optional[np.ndarray] = None) -> StarBody:
    """以原点为中心的椭球，半轴沿 rotation 的列方向"""
    axes = np.asarray(semi_axes, dtype=float)
    rot = np.eye(grid.n) if rotation is None else np.asarray(rotation, dtype=float)
    return from_gauge(grid, lambda x: np.linalg.norm((x @ rot) / axes, axis=1))


def gauge_eval(K: StarBody, x) -> Union[float, np.ndarray]:
    """
    规范函数 ‖x‖_K = |x| / ρ_K(x/|x|)

    Args:
        K: 星形体
        x: 单个向量 (n,) 或一组向量 (k, n)

    Raises:
        GeometryError: x 含零向量
    """
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    norms = np.linalg.norm(pts, axis=1)
    if np.any(norms == 0.0):
        raise GeometryError("规范函数在原点无定义 (x = 0)")
    rho = K.grid.interpolate(K.rho, pts / norms[:, None])
    result = norms / rho
    return float(result[0]) if single else result


def volume(K: StarBody) -> float:
    """vol(K) = (1/n) Σ w ρⁿ"""
    return K.grid.integrate(K.rho ** K.n) / K.n


def dual_mixed_volume(K: StarBody, L: StarBody, alpha: float) -> float:
    """
    对偶混合体积 Ṽ_α(K, L) = (1/n) Σ w ρ_K^{n−α} ρ_L^α

    Raises:
        GeometryError: 网格不一致或 α ∈ {0, n}
    """
    _same_grid(K, L)
    if alpha == 0 or alpha == K.n:
        raise GeometryError(f"对偶混合体积要求 α ∉ {{0, n}}，当前 α={alpha}")
    n = K.n
    return K.grid.integrate(K.rho ** (n - alpha) * L.rho ** alpha) / n


def dual_mixed_volume_bound(K: StarBody, L: StarBody, alpha: float) -> float:
    """vol(K)^{(n−α)/n} vol(L)^{α/n}：α ∈ (0, n) 时为上界，α < 0 时为下界"""
    n = K.n
    return volume(K) ** ((n - alpha) / n) * volume(L) ** (alpha / n)


def radial_sum(K: StarBody, L: StarBody, q: float) -> StarBody:
    """q-径向和：ρ^q = ρ_K^q + ρ_L^q"""
    _same_grid(K, L)
    if q == 0:
        raise GeometryError("径向和要求 q ≠ 0")
    return StarBody(K.grid, (K.rho ** q + L.rho ** q) ** (1.0 / q))


def linear_image(phi: AffineMap, K: StarBody) -> StarBody:
    """
    线性像 φK：ρ_{φK}(ξ) = 1/‖φ⁻¹ξ‖_K，在同一网格上重新采样

    Raises:
        GeometryError: φ 含平移
    """
    if not phi.is_linear():
        raise GeometryError("linear_image 要求平移为零")
    if phi.n != K.n:
        raise GeometryError("映射维数与星形体维数不一致")
    pulled = K.grid.nodes @ phi.inverse.T
    return StarBody(K.grid, 1.0 / gauge_eval(K, pulled))


def schwarz_ball(K: StarBody) -> StarBody:
    """同体积的中心球（离散体积精确保持）"""
    n = K.n
    radius = (n * volume(K) / float(np.sum(K.grid.weights))) ** (1.0 / n)
    return ball(K.grid, radius)


def moment_body_support(L: StarBody, p: float, xi) -> Union[float, np.ndarray]:
    """
    矩体支撑函数 h_{ΓL}(ξ) = (Σ w |⟨ξ, η⟩|^p ρ_L(η)^{n+p})^{1/p}

    Args:
        L: 星形体
        p: 指数 p ≥ 1
        xi: 单个向量或一组向量
    """
    if p < 1:
        raise GeometryError(f"矩体要求 p ≥ 1，当前 {p}")
    vecs = np.asarray(xi, dtype=float)
    single = vecs.ndim == 1
    vecs = np.atleast_2d(vecs)
    mass = L.grid.weights * L.rho ** (L.n + p)
    h = (np.abs(vecs @ L.grid.nodes.T) ** p @ mass) ** (1.0 / p)
    return float(h[0]) if single else h


def random_star_body(seed: int, n: int, grid: SphereGrid) -> StarBody:
    """
    随机星形体：ρ = exp(低阶随机三角/球面多项式)，截断到 [0.2, 5]

    同一 seed 得到同一个体
    """
    if grid.n != n:
        raise GeometryError("网格维数与 n 不一致")
    rng = np.random.default_rng(seed)
    if n == 1:
        log_rho = rng.normal(0.0, 0.35, size=2)
    elif n == 2:
        theta = np.arctan2(grid.nodes[:, 1], grid.nodes[:, 0])
        log_rho = np.full(grid.size, rng.normal(0.0, 0.1))
        for k in range(1, 4):
            a, b = rng.normal(0.0, 0.35 / k, size=2)
            log_rho += a * np.cos(k * theta) + b * np.sin(k * theta)
    else:
        x = grid.nodes
        linear = rng.normal(0.0, 0.3, size=3)
        quad = rng.normal(0.0, 0.25, size=(3, 3))
        cubic = rng.normal(0.0, 0.15, size=3)
        log_rho = x @ linear + np.einsum("ki,ij,kj->k", x, quad, x) + (x ** 3) @ cubic
    return StarBody(grid, np.clip(np.exp(log_rho), *RANDOM_CLIP))


def is_dilate(K: StarBody, L: StarBody, tol: float = 1e-6) -> bool:
    """ρ_K/ρ_L 的相对上确界距离小于 tol 时视为伸缩"""
    _same_grid(K, L)
    ratio = K.rho / L.rho
    return bool((ratio.max() - ratio.min()) / ratio.min() < tol)


def unit_volume_normalized(K: StarBody) -> StarBody:
    """伸缩到体积 ω_n"""
    return K.dilate((omega_n(K.n) / volume(K)) ** (1.0 / K.n))


def relative_rho_distance(K: StarBody, L: StarBody) -> float:
    """max |ρ_K/ρ_L − 1|"""
    _same_grid(K, L)
    return float(np.max(np.abs(K.rho / L.rho - 1.0)))


def ball_radius_spread(K: StarBody) -> float:
    """max ρ / min ρ − 1，为 0 时 K 是球"""
    return float(K.rho.max() / K.rho.min() - 1.0)


def volume_power(K: StarBody, exponent: float) -> float:
    """vol(K)^{exponent}"""
    vol = volume(K)
    if not vol > 0 or not math.isfinite(vol):
        raise GeometryError(f"体积无效: {vol}")
    return vol ** exponent


BODY_KINDS = ("ball", "ellipsoid", "random", "rho")


def body_from_spec(spec: Union[str, dict], grid: SphereGrid) -> StarBody:
    """
    由配置中的描述构造星形体

    Args:
        spec: "ball" / "random" 等类型名，或
              {"kind": "ball", "radius": r}、{"kind": "ellipsoid", "semi_axes": [...], "rotation": [[...]]}、
              {"kind": "random", "seed": k}、{"kind": "rho", "rho": [...]}
        grid: 球面网格

    Raises:
        GeometryError: 描述无效
    """
    data = {"kind": spec} if isinstance(spec, str) else dict(spec)
    kind = data.pop("kind", "rho" if "rho" in data else None)
    try:
        if kind == "ball":
            return ball(grid, float(data.get("radius", 1.0)))
        if kind == "ellipsoid":
            return ellipsoid(grid, data["semi_axes"], data.get("rotation"))
        if kind == "random":
            return random_star_body(int(data.get("seed", 0)), grid.n, grid)
        if kind == "rho":
            return StarBody(grid, data["rho"])
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, GeometryError):
            raise
        raise GeometryError(f"星形体描述无效: {spec!r} ({e})") from e
    raise GeometryError(f"未知的星形体类型: {kind}，可选 {', '.join(BODY_KINDS)}")
