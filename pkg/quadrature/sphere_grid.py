#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
球面求积网格
S^{n−1} 上的节点与权重，同一次运行中所有星形体共享一个网格
"""

import math
from functools import cached_property, lru_cache
from typing import Tuple

import numpy as np
from scipy.spatial import ConvexHull

from core.errors import GeometryError, QuadratureError

# alpha_np 等常数使用的参考精度
REFERENCE_LEVEL = {1: 1, 2: 2048, 3: 96}
DEFAULT_LEVEL = {1: 1, 2: 16, 3: 8}


class SphereGrid:
    """
    球面网格

    n = 1: {+1, −1}，权重为 1
    n = 2: 4·level 个等角节点，梯形权重
    n = 3: level 个 cos θ 方向的 Gauss–Legendre 节点 × 2·level 个等分方位角
    """

    def __init__(self, n: int, level: int, nodes: np.ndarray, weights: np.ndarray):
        nodes = np.array(nodes, dtype=float)
        weights = np.array(weights, dtype=float)
        nodes.setflags(write=False)
        weights.setflags(write=False)
        self.n = n
        self.level = level
        self.nodes = nodes
        self.weights = weights

    @property
    def size(self) -> int:
        return len(self.weights)

    def same_as(self, other: "SphereGrid") -> bool:
        """同一组节点（逐元素相等）"""
        return self is other or (
            self.n == other.n and self.size == other.size and np.array_equal(self.nodes, other.nodes)
        )

    @cached_property
    def antipodes(self) -> np.ndarray:
        """antipodes[i] 为 −nodes[i] 的节点下标"""
        gram = self.nodes @ self.nodes.T
        idx = np.argmin(gram, axis=1)
        if not np.allclose(self.nodes[idx], -self.nodes, atol=1e-10):
            raise GeometryError("网格不具有对径对称性")
        return idx

    @cached_property
    def _angles(self) -> np.ndarray:
        return np.arctan2(self.nodes[:, 1], self.nodes[:, 0])

    @cached_property
    def _facets(self) -> Tuple[np.ndarray, np.ndarray]:
        hull = ConvexHull(self.nodes)
        simplices = hull.simplices
        # 每个面的顶点矩阵的逆，用于求射线与面的交点坐标
        verts = self.nodes[simplices]
        inv = np.linalg.inv(np.transpose(verts, (0, 2, 1)))
        return simplices, inv

    def interpolation_weights(self, directions: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        计算插值所用的节点下标与权重

        Args:
            directions: 形状 (k, n) 的单位向量

        Returns:
            (下标, 权重)，形状均为 (k, m)，n=1 时 m=1，n=2 时 m=2，n=3 时 m=3
        """
        dirs = np.atleast_2d(np.asarray(directions, dtype=float))
        if self.n == 1:
            idx = np.where(dirs[:, 0] >= 0.0, 0, 1)[:, None]
            return idx, np.ones_like(idx, dtype=float)

        if self.n == 2:
            m = self.size
            step = 2.0 * math.pi / m
            theta = np.mod(np.arctan2(dirs[:, 1], dirs[:, 0]), 2.0 * math.pi)
            pos = theta / step
            lo = np.floor(pos).astype(int) % m
            frac = pos - np.floor(pos)
            idx = np.stack([lo, (lo + 1) % m], axis=1)
            w = np.stack([1.0 - frac, frac], axis=1)
            return idx, w

        simplices, inv = self._facets
        k = dirs.shape[0]
        idx = np.zeros((k, 3), dtype=int)
        w = np.zeros((k, 3))
        chunk = 2048
        for start in range(0, k, chunk):
            block = dirs[start:start + chunk]
            # coeff[k, f, :] = V_f^{-T} u：射线方向在面顶点下的坐标
            coeff = np.einsum("fij,kj->kfi", inv, block)
            score = coeff.min(axis=2)
            best = np.argmax(score, axis=1)
            c = coeff[np.arange(len(block)), best]
            c = np.clip(c, 0.0, None)
            idx[start:start + chunk] = simplices[best]
            w[start:start + chunk] = c / c.sum(axis=1, keepdims=True)
        return idx, w

    def interpolate(self, values: np.ndarray, directions: np.ndarray) -> np.ndarray:
        """在任意单位方向上插值节点值（n=1 取最近节点，n=2 按角度线性，n=3 球面重心坐标）"""
        idx, w = self.interpolation_weights(directions)
        return np.sum(np.asarray(values)[idx] * w, axis=1)

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))

    def to_dict(self) -> dict:
        return {"n": self.n, "level": self.level, "size": self.size}


@lru_cache(maxsize=32)
def sphere_grid(n: int, level: int) -> SphereGrid:
    """
    构造球面网格

    Args:
        n: 维数 1、2、3
        level: 精度等级，level ≥ 1

    Returns:
        SphereGrid 实例

    Raises:
        QuadratureError: 不支持的维数或等级
    """
    if n not in (1, 2, 3):
        raise QuadratureError(f"不支持的球面维数 n={n}")
    if int(level) != level or level < 1:
        raise QuadratureError(f"球面网格等级必须为正整数，当前 {level}")
    level = int(level)

    if n == 1:
        return SphereGrid(1, level, np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]))

    if n == 2:
        m = 4 * level
        theta = 2.0 * math.pi * np.arange(m) / m
        nodes = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return SphereGrid(2, level, nodes, np.full(m, 2.0 * math.pi / m))

    # cos θ 方向的 Gauss–Legendre 节点关于 0 对称，方位角个数为偶数，因此网格对径对称
    z, wz = np.polynomial.legendre.leggauss(level)
    m_phi = 2 * level
    phi = 2.0 * math.pi * (np.arange(m_phi) + 0.5) / m_phi
    zz, pp = np.meshgrid(z, phi, indexing="ij")
    r = np.sqrt(1.0 - zz ** 2)
    nodes = np.stack([r * np.cos(pp), r * np.sin(pp), zz], axis=-1).reshape(-1, 3)
    nodes /= np.linalg.norm(nodes, axis=1, keepdims=True)
    weights = np.outer(wz, np.full(m_phi, 2.0 * math.pi / m_phi)).reshape(-1)
    return SphereGrid(3, level, nodes, weights)


def default_sphere_grid(n: int) -> SphereGrid:
    return sphere_grid(n, DEFAULT_LEVEL[n])


def reference_sphere_grid(n: int) -> SphereGrid:
    return sphere_grid(n, REFERENCE_LEVEL[n])
