#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
求积配置
配置文件中的 quadrature 块，未给出的项按维数取默认值
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from core.errors import QuadratureError
from core.fields import BaseField
from quadrature.box_quad import BoxQuad, box_for_field
from quadrature.sphere_grid import SphereGrid, default_sphere_grid, sphere_grid
from quadrature.t_integral import TGrid

DEFAULT_BOX_POINTS = {1: 400, 2: 64, 3: 28}
DEFAULT_LEVEL_POINTS = {1: 20000, 2: 256, 3: 64}
DEFAULT_ORACLE_POINTS = {1: 3000, 2: 72}
DEFAULT_RIESZ_POINTS = {1: 1200, 2: 72}


@dataclass(frozen=True)
class QuadConfig:
    """一次运行使用的全部求积参数"""

    sphere_level: Optional[int] = None
    box_half_extent: Optional[float] = None
    box_points: Optional[int] = None
    t_min: float = 1.0e-4
    t_max: float = 1.0e4
    t_points: int = 200
    level_points: Optional[int] = None
    level_count: int = 200
    oracle_points: Optional[int] = None
    riesz_points: Optional[int] = None

    def __post_init__(self):
        for name in ("sphere_level", "box_points", "level_points", "oracle_points", "riesz_points"):
            value = getattr(self, name)
            if value is not None and (int(value) != value or value < 1):
                raise QuadratureError(f"{name} 必须为正整数，当前 {value}")
        if self.level_count < 2:
            raise QuadratureError(f"level_count 至少为 2，当前 {self.level_count}")
        if self.box_half_extent is not None and not self.box_half_extent > 0:
            raise QuadratureError(f"box_half_extent 必须为正，当前 {self.box_half_extent}")
        # 提前校验 t 网格
        self.tgrid()

    def sphere(self, n: int) -> SphereGrid:
        if self.sphere_level:
            return sphere_grid(n, self.sphere_level)
        return default_sphere_grid(n)

    def box_for(self, f: BaseField) -> BoxQuad:
        return box_for_field(f, self.box_points or DEFAULT_BOX_POINTS[f.n], self.box_half_extent)

    def tgrid(self, tail_coeff: Optional[float] = None) -> TGrid:
        return TGrid(self.t_min, self.t_max, self.t_points, tail_coeff=tail_coeff)

    def level_grid_points(self, n: int) -> int:
        return self.level_points or DEFAULT_LEVEL_POINTS[n]

    def oracle_grid_points(self, n: int) -> int:
        if n not in DEFAULT_ORACLE_POINTS:
            raise QuadratureError(f"双重积分验证只支持 n ≤ 2，当前 n={n}")
        return self.oracle_points or DEFAULT_ORACLE_POINTS[n]

    def riesz_grid_points(self, n: int) -> int:
        if n not in DEFAULT_RIESZ_POINTS:
            raise QuadratureError(f"Riesz 三重积分只支持 n ≤ 2，当前 n={n}")
        return self.riesz_points or DEFAULT_RIESZ_POINTS[n]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QuadConfig":
        return cls(**data)
