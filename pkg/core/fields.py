#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
解析测试函数目录
每个函数由目录类型、参数、仿射映射和缩放因子描述，按需在任意点求值与求梯度。
函数求值按 f(x) = scale · f₀(φ⁻¹(x)) 进行，φ(y) = A y + a。
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from core.errors import FieldError, GeometryError
from core.params import omega_n

MAX_CONDITION = 1.0e6

# 高斯函数的有效支撑半径（以 width 为单位）
GAUSSIAN_SUPPORT = 8.0
# 双重积分验证用的有效半径，e^{-20} 以下视为零
GAUSSIAN_ORACLE_SUPPORT = 4.5

CATALOG_KINDS = ("ball_indicator", "gaussian", "bubble", "bump", "ramp_bump")


class AffineMap:
    """仿射映射 φ(y) = A y + a，构造后不可变"""

    def __init__(self, matrix, translation=None):
        """
        初始化仿射映射

        Args:
            matrix: n×n 实矩阵
            translation: 平移向量，默认零向量

        Raises:
            GeometryError: 矩阵奇异或条件数超过 10⁶
        """
        a_mat = np.array(matrix, dtype=float)
        if a_mat.ndim != 2 or a_mat.shape[0] != a_mat.shape[1]:
            raise GeometryError(f"仿射矩阵必须为方阵，当前形状 {a_mat.shape}")
        n = a_mat.shape[0]
        if translation is None:
            shift = np.zeros(n)
        else:
            shift = np.array(translation, dtype=float).reshape(-1)
        if shift.shape != (n,):
            raise GeometryError(f"平移向量维数应为 {n}，当前为 {shift.shape}")
        if not (np.all(np.isfinite(a_mat)) and np.all(np.isfinite(shift))):
            raise GeometryError("仿射映射包含非有限值")

        det = float(np.linalg.det(a_mat))
        if det == 0.0 or not math.isfinite(det):
            raise GeometryError("仿射矩阵奇异 (det = 0)")
        cond = float(np.linalg.cond(a_mat))
        if not math.isfinite(cond) or cond > MAX_CONDITION:
            raise GeometryError(f"仿射矩阵条件数过大: {cond:.3g} > {MAX_CONDITION:g}")

        inverse = np.linalg.inv(a_mat)
        for arr in (a_mat, shift, inverse):
            arr.setflags(write=False)
        self._matrix = a_mat
        self._translation = shift
        self._inverse = inverse
        self._det = det

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def translation(self) -> np.ndarray:
        return self._translation

    @property
    def inverse(self) -> np.ndarray:
        return self._inverse

    @property
    def det(self) -> float:
        return self._det

    @property
    def operator_norm(self) -> float:
        return float(np.linalg.norm(self._matrix, 2))

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(np.eye(n))

    @classmethod
    def sl_normalized(cls, matrix, translation=None) -> "AffineMap":
        """
        将矩阵缩放为 det = 1

        Raises:
            GeometryError: det ≤ 0 时无法通过正数缩放得到 det = 1
        """
        a_mat = np.array(matrix, dtype=float)
        det = float(np.linalg.det(a_mat))
        if det <= 0.0:
            raise GeometryError(f"SL 归一化要求 det > 0，当前 det={det:.3g}")
        n = a_mat.shape[0]
        return cls(a_mat / det ** (1.0 / n), translation)

    def is_linear(self) -> bool:
        return not np.any(self._translation)

    def is_conformal(self, tol: float = 1e-12) -> bool:
        """A Aᵀ 是否为单位阵的倍数（旋转乘以缩放）"""
        gram = self._matrix @ self._matrix.T
        scale = np.trace(gram) / self.n
        return bool(np.max(np.abs(gram - scale * np.eye(self.n))) <= tol * scale)

    def apply(self, y: np.ndarray) -> np.ndarray:
        return np.asarray(y, dtype=float) @ self._matrix.T + self._translation

    def pull_back(self, x: np.ndarray) -> np.ndarray:
        """φ⁻¹(x)"""
        return (np.asarray(x, dtype=float) - self._translation) @ self._inverse.T

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self ∘ inner"""
        return AffineMap(self._matrix @ inner.matrix, self._matrix @ inner.translation + self._translation)

    def shifted(self, offset) -> "AffineMap":
        return AffineMap(self._matrix, self._translation + np.asarray(offset, dtype=float))

    def to_dict(self) -> Dict[str, Any]:
        return {"matrix": self._matrix.tolist(), "translation": self._translation.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AffineMap":
        if "matrix" not in data:
            raise GeometryError("仿射映射缺少 matrix 字段")
        return cls(data["matrix"], data.get("translation"))


def random_sl_shear(n: int, seed: int, strength: Tuple[float, float] = (0.3, 0.8)) -> AffineMap:
    """
    生成随机 SL(n) 剪切：上三角剪切乘以对角伸缩，再归一化为 det = 1

    Args:
        n: 维数
        seed: 随机种子
        strength: 非对角元素绝对值的取值范围
    """
    rng = np.random.default_rng(seed)
    shear = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            shear[i, j] = rng.uniform(*strength) * rng.choice([-1.0, 1.0])
    stretch = np.diag(np.exp(rng.uniform(-0.25, 0.25, size=n)))
    return AffineMap.sl_normalized(stretch @ shear)


def _as_points(x: np.ndarray, n: int) -> np.ndarray:
    pts = np.asarray(x, dtype=float)
    if pts.shape[-1] != n:
        raise FieldError(f"求值点维数应为 {n}，当前形状 {pts.shape}")
    return pts


def ball_lens_measure(n: int, radius: float, distance: float) -> float:
    """两个半径为 radius、中心距为 distance 的球之交的体积"""
    r = radius
    d = abs(distance)
    if d >= 2.0 * r:
        return 0.0
    if n == 1:
        return 2.0 * r - d
    if n == 2:
        return 2.0 * r * r * math.acos(d / (2.0 * r)) - 0.5 * d * math.sqrt(4.0 * r * r - d * d)
    return math.pi * (4.0 * r + d) * (2.0 * r - d) ** 2 / 12.0


class BaseField(ABC):
    """函数基类：所有目录函数、和函数以及重排后的径向函数共用的接口"""

    n: int

    @abstractmethod
    def value(self, x: np.ndarray) -> np.ndarray:
        """在形状 (..., n) 的点上求值"""

    def gradient(self, x: np.ndarray) -> np.ndarray:
        raise FieldError(f"{self.describe()} 不光滑，不提供梯度")

    @property
    def is_smooth(self) -> bool:
        return False

    @property
    def is_radial(self) -> bool:
        return False

    @property
    def is_even(self) -> bool:
        return self.is_radial

    @property
    def is_affine_radial(self) -> bool:
        """是否为径向函数经仿射映射和平移后的像"""
        return self.is_radial

    @property
    @abstractmethod
    def is_nonnegative(self) -> bool:
        """构造上已知非负"""

    @property
    @abstractmethod
    def support_center(self) -> np.ndarray:
        """支撑（或有效支撑）球心"""

    @property
    @abstractmethod
    def support_radius(self) -> float:
        """支撑（或有效支撑）半径"""

    @property
    def oracle_radius(self) -> float:
        """双重积分验证使用的截断半径"""
        return self.support_radius

    def overlap_energy(self, z: np.ndarray, p: float, sign: Optional[str] = None) -> Optional[float]:
        """若有闭式，返回 ∫ |f(x+z) − f(x)|^p dx（或带符号部分）；否则 None"""
        return None

    def exact_superlevel_measure(self, t: float) -> Optional[float]:
        """若有闭式，返回 vol{f ≥ t}；否则 None"""
        return None

    def negated(self) -> "BaseField":
        raise FieldError(f"{self.describe()} 不支持取负")

    def absolute(self) -> "BaseField":
        if self.is_nonnegative:
            return self
        return AbsField(self)

    def translated(self, offset) -> "BaseField":
        raise FieldError(f"{self.describe()} 不支持平移")

    def composed_with(self, phi: AffineMap) -> "BaseField":
        """返回 f∘φ⁻¹"""
        raise FieldError(f"{self.describe()} 不支持仿射复合")

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """规范 JSON 编码"""

    def describe(self) -> str:
        return self.to_dict().get("kind", type(self).__name__)


@dataclass(frozen=True, eq=False)
class FieldSpec(BaseField):
    """目录函数描述"""

    kind: str
    n: int
    radius: float = 1.0
    width: float = 1.0
    s: float = 0.5
    slope: float = 0.0
    cutoff: float = 30.0
    center: Tuple[float, ...] = ()
    affine: Optional[AffineMap] = None
    scale: float = 1.0
    _center_arr: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.kind not in CATALOG_KINDS:
            raise FieldError(f"未知的函数类型: {self.kind}，可选 {', '.join(CATALOG_KINDS)}")
        if self.n not in (1, 2, 3):
            raise FieldError(f"不支持的维数 n={self.n}")
        center = np.zeros(self.n) if len(self.center) == 0 else np.array(self.center, dtype=float)
        if center.shape != (self.n,):
            raise FieldError(f"center 维数应为 {self.n}")
        center.setflags(write=False)
        object.__setattr__(self, "center", tuple(float(c) for c in center))
        object.__setattr__(self, "_center_arr", center)
        if self.affine is None:
            object.__setattr__(self, "affine", AffineMap.identity(self.n))
        elif self.affine.n != self.n:
            raise FieldError("仿射映射维数与函数维数不一致")

        if self.kind in ("ball_indicator", "bump", "ramp_bump") and not self.radius > 0:
            raise FieldError(f"radius 必须为正，当前 {self.radius}")
        if self.kind == "gaussian" and not self.width > 0:
            raise FieldError(f"width 必须为正，当前 {self.width}")
        if self.kind == "bubble":
            if not 0.0 < self.s < 1.0:
                raise FieldError(f"bubble 的 s 必须位于 (0, 1)，当前 {self.s}")
            if self.n <= 2.0 * self.s:
                raise FieldError(f"bubble 需要 n > 2s (n={self.n}, s={self.s})")
            if not self.cutoff > 0:
                raise FieldError("bubble 的 cutoff 必须为正")
        if self.kind == "ramp_bump" and not abs(self.slope) < 1.0:
            raise FieldError(f"ramp_bump 的 slope 必须满足 |slope| < 1，当前 {self.slope}")
        if not math.isfinite(self.scale):
            raise FieldError("scale 必须为有限实数")

    # ------------------------------------------------------------------
    # 局部坐标下的剖面

    def _local_value(self, u: np.ndarray) -> np.ndarray:
        q = np.sum(u * u, axis=-1)
        if self.kind == "ball_indicator":
            return (q <= self.radius ** 2).astype(float)
        if self.kind == "gaussian":
            return np.exp(-q / self.width ** 2)
        if self.kind == "bubble":
            val = (1.0 + q) ** (-(self.n - 2.0 * self.s) / 2.0)
            return np.where(q <= self.cutoff ** 2, val, 0.0)
        bump = self._bump(q / self.radius ** 2)
        if self.kind == "bump":
            return bump
        return bump * (1.0 + self.slope * u[..., 0] / self.radius)

    @staticmethod
    def _bump(q: np.ndarray) -> np.ndarray:
        inside = q < 1.0
        gap = np.where(inside, 1.0 - q, 1.0)
        return np.where(inside, np.exp(1.0 - 1.0 / gap), 0.0)

    def _local_gradient(self, u: np.ndarray) -> np.ndarray:
        q = np.sum(u * u, axis=-1)
        if self.kind == "gaussian":
            return (-2.0 / self.width ** 2) * u * np.exp(-q / self.width ** 2)[..., None]
        if self.kind == "bubble":
            val = (1.0 + q) ** (-(self.n - 2.0 * self.s) / 2.0)
            coeff = np.where(q <= self.cutoff ** 2, -(self.n - 2.0 * self.s) * val / (1.0 + q), 0.0)
            return coeff[..., None] * u
        r2 = self.radius ** 2
        qn = q / r2
        bump = self._bump(qn)
        inside = qn < 1.0
        gap = np.where(inside, 1.0 - qn, 1.0)
        # d/du exp(1 − 1/(1−|u|²/r²)) = −2u/(r²(1−q)²) · bump
        d_bump = np.where(inside, -2.0 * bump / (r2 * gap * gap), 0.0)[..., None] * u
        if self.kind == "bump":
            return d_bump
        ramp = 1.0 + self.slope * u[..., 0] / self.radius
        grad = d_bump * ramp[..., None]
        grad[..., 0] += bump * self.slope / self.radius
        return grad

    # ------------------------------------------------------------------

    def value(self, x: np.ndarray) -> np.ndarray:
        pts = _as_points(x, self.n)
        u = self.affine.pull_back(pts) - self._center_arr
        return self.scale * self._local_value(u)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        if not self.is_smooth:
            raise FieldError(f"{self.kind} 不光滑，拒绝计算梯度")
        pts = _as_points(x, self.n)
        u = self.affine.pull_back(pts) - self._center_arr
        # ∇ₓ f = scale · A^{-T} ∇_y f₀
        return self.scale * (self._local_gradient(u) @ self.affine.inverse)

    @property
    def is_smooth(self) -> bool:
        return self.kind != "ball_indicator"

    @property
    def is_radial(self) -> bool:
        return (
            self.kind != "ramp_bump"
            and not np.any(self._center_arr)
            and self.affine.is_linear()
            and self.affine.is_conformal()
        )

    @property
    def is_even(self) -> bool:
        return self.kind != "ramp_bump" and not np.any(self._center_arr) and self.affine.is_linear()

    @property
    def is_affine_radial(self) -> bool:
        return self.kind != "ramp_bump"

    @property
    def is_nonnegative(self) -> bool:
        return self.scale >= 0.0

    @property
    def local_radius(self) -> float:
        if self.kind == "gaussian":
            return GAUSSIAN_SUPPORT * self.width
        if self.kind == "bubble":
            return self.cutoff
        return self.radius

    @property
    def support_center(self) -> np.ndarray:
        return self.affine.apply(self._center_arr)

    @property
    def support_radius(self) -> float:
        return self.affine.operator_norm * self.local_radius

    @property
    def oracle_radius(self) -> float:
        if self.kind == "gaussian":
            return self.affine.operator_norm * GAUSSIAN_ORACLE_SUPPORT * self.width
        return self.support_radius

    def overlap_energy(self, z: np.ndarray, p: float, sign: Optional[str] = None) -> Optional[float]:
        if self.kind != "ball_indicator":
            return None
        # 对称差体积 |det A| · 2(ω rⁿ − lens(r, |A⁻¹z|))
        d = float(np.linalg.norm(self.affine.inverse @ np.asarray(z, dtype=float)))
        r = self.radius
        sym_diff = 2.0 * (omega_n(self.n) * r ** self.n - ball_lens_measure(self.n, r, d))
        energy = abs(self.scale) ** p * abs(self.affine.det) * sym_diff
        if sign is None:
            return energy
        return 0.5 * energy

    def exact_superlevel_measure(self, t: float) -> Optional[float]:
        if self.kind != "ball_indicator":
            return None
        if t <= 0:
            return None
        if self.scale >= t:
            return abs(self.affine.det) * omega_n(self.n) * self.radius ** self.n
        return 0.0

    def negated(self) -> "FieldSpec":
        return replace(self, scale=-self.scale)

    def absolute(self) -> "FieldSpec":
        return self if self.scale >= 0 else replace(self, scale=-self.scale)

    def with_scale(self, scale: float) -> "FieldSpec":
        return replace(self, scale=float(scale))

    def translated(self, offset) -> "FieldSpec":
        return replace(self, affine=self.affine.shifted(offset))

    def composed_with(self, phi: AffineMap) -> "FieldSpec":
        return replace(self, affine=phi.compose(self.affine))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind, "n": self.n, "center": list(self.center), "scale": self.scale}
        if self.kind in ("ball_indicator", "bump", "ramp_bump"):
            data["radius"] = self.radius
        if self.kind == "gaussian":
            data["width"] = self.width
        if self.kind == "bubble":
            data["s"] = self.s
            data["cutoff"] = self.cutoff
        if self.kind == "ramp_bump":
            data["slope"] = self.slope
        data["affine"] = self.affine.to_dict()
        return data


class SumField(BaseField):
    """有限个函数之和，例如双峰函数或变号函数"""

    def __init__(self, terms):
        terms = tuple(terms)
        if not terms:
            raise FieldError("SumField 至少需要一项")
        dims = {t.n for t in terms}
        if len(dims) != 1:
            raise FieldError("SumField 各项维数不一致")
        self.terms = terms
        self.n = terms[0].n
        centers = np.array([t.support_center for t in terms])
        self._center = centers.mean(axis=0)
        self._radius = max(
            float(np.linalg.norm(t.support_center - self._center)) + t.support_radius for t in terms
        )
        self._oracle_radius = max(
            float(np.linalg.norm(t.support_center - self._center)) + t.oracle_radius for t in terms
        )

    def value(self, x: np.ndarray) -> np.ndarray:
        total = self.terms[0].value(x)
        for term in self.terms[1:]:
            total = total + term.value(x)
        return total

    def gradient(self, x: np.ndarray) -> np.ndarray:
        if not self.is_smooth:
            raise FieldError("SumField 含不光滑项，拒绝计算梯度")
        total = self.terms[0].gradient(x)
        for term in self.terms[1:]:
            total = total + term.gradient(x)
        return total

    @property
    def is_smooth(self) -> bool:
        return all(t.is_smooth for t in self.terms)

    @property
    def is_nonnegative(self) -> bool:
        return all(t.is_nonnegative for t in self.terms)

    @property
    def support_center(self) -> np.ndarray:
        return self._center

    @property
    def support_radius(self) -> float:
        return self._radius

    @property
    def oracle_radius(self) -> float:
        return self._oracle_radius

    def negated(self) -> "SumField":
        return SumField(t.negated() for t in self.terms)

    def translated(self, offset) -> "SumField":
        return SumField(t.translated(offset) for t in self.terms)

    def composed_with(self, phi: AffineMap) -> "SumField":
        return SumField(t.composed_with(phi) for t in self.terms)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "sum", "n": self.n, "terms": [t.to_dict() for t in self.terms]}


class AbsField(BaseField):
    """|f|"""

    def __init__(self, base: BaseField):
        self.base = base
        self.n = base.n

    def value(self, x: np.ndarray) -> np.ndarray:
        return np.abs(self.base.value(x))

    @property
    def is_radial(self) -> bool:
        return self.base.is_radial

    @property
    def is_nonnegative(self) -> bool:
        return True

    @property
    def support_center(self) -> np.ndarray:
        return self.base.support_center

    @property
    def support_radius(self) -> float:
        return self.base.support_radius

    @property
    def oracle_radius(self) -> float:
        return self.base.oracle_radius

    def translated(self, offset) -> "AbsField":
        return AbsField(self.base.translated(offset))

    def composed_with(self, phi: AffineMap) -> "AbsField":
        return AbsField(self.base.composed_with(phi))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "abs", "n": self.n, "field": self.base.to_dict()}


def make_field(kind: str, n: int, **params) -> FieldSpec:
    """按类型名和参数构造目录函数"""
    affine = params.pop("affine", None)
    if isinstance(affine, dict):
        affine = AffineMap.from_dict(affine)
    center = params.pop("center", ())
    return FieldSpec(kind=kind, n=n, center=tuple(center), affine=affine, **params)


def field_from_dict(data: Union[str, Dict[str, Any]], n: Optional[int] = None) -> BaseField:
    """
    从规范 JSON 编码构造函数

    Args:
        data: 类型名字符串（使用默认参数）或完整的字典编码
        n: 维数；字典中带有 n 时以字典为准

    Returns:
        BaseField 实例

    Raises:
        FieldError: 编码无效
    """
    if isinstance(data, str):
        data = {"kind": data}
    if not isinstance(data, dict) or "kind" not in data:
        raise FieldError(f"函数描述必须包含 kind 字段: {data!r}")
    spec = dict(data)
    kind = spec.pop("kind")
    dim = int(spec.pop("n", n) or 0)
    if dim not in (1, 2, 3):
        raise FieldError(f"函数描述缺少有效维数 n: {data!r}")

    if kind == "sum":
        return SumField(field_from_dict(t, dim) for t in spec.get("terms", []))
    if kind == "abs":
        return AbsField(field_from_dict(spec["field"], dim))
    if kind == "profile":
        from rearrange.schwarz import ProfileField, RadialProfile

        return ProfileField(RadialProfile(dim, np.array(spec["radii"]), np.array(spec["values"])))

    allowed = {"radius", "width", "s", "slope", "cutoff", "center", "affine", "scale"}
    unknown = set(spec) - allowed
    if unknown:
        raise FieldError(f"函数 {kind} 包含未知参数: {', '.join(sorted(unknown))}")
    try:
        return make_field(kind, dim, **spec)
    except (TypeError, GeometryError) as e:
        raise FieldError(f"函数描述无效: {e}") from e


def eval_field(f: BaseField, x) -> float:
    """单点求值"""
    pts = np.asarray(x, dtype=float).reshape(1, -1)
    return float(f.value(pts)[0])


def eval_gradient(f: BaseField, x) -> np.ndarray:
    """单点梯度，对不光滑函数抛出 FieldError"""
    pts = np.asarray(x, dtype=float).reshape(1, -1)
    return f.gradient(pts)[0]
