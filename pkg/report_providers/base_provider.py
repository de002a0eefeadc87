#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
报告与检查项
每个报告记录输入、数值结果、带容差的检查项、表格和各阶段耗时
"""

import math
import time
from abc import ABC, abstractmethod
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable, Dict, Iterator, List, Optional, Sequence

import numpy as np
import pandas as pd

from utils.thread_manager import ThreadManager

if TYPE_CHECKING:
    from config_manager import RunConfig

RELATIONS = ("<=", ">=", "==", "<", ">")


def to_builtin(value: Any) -> Any:
    """numpy 标量/数组转成 JSON 可写的内置类型"""
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


@dataclass
class GapCheck:
    """
    一项比较 lhs <relation> rhs，按相对误差 (lhs − rhs)/max(|lhs|, |rhs|) 判定；给出 scale 时改用 (lhs − rhs)/scale

    严格关系 '<' '>' 要求差值超过 tolerance；asserted 为 False 的检查只报告、不影响退出码
    """

    name: str
    lhs: float
    rhs: float
    relation: str
    tolerance: float
    asserted: bool = True
    note: str = ""
    scale: Optional[float] = None

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"未知的比较关系: {self.relation}")
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        self.tolerance = float(self.tolerance)

    @property
    def gap(self) -> float:
        return self.lhs - self.rhs

    @property
    def relative_gap(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs)) if self.scale is None else self.scale
        if scale == 0.0:
            return 0.0
        return self.gap / scale

    @property
    def passed(self) -> bool:
        rel = self.relative_gap
        if not math.isfinite(rel):
            return False
        if self.relation == "<=":
            return rel <= self.tolerance
        if self.relation == ">=":
            return rel >= -self.tolerance
        if self.relation == "==":
            return abs(rel) <= self.tolerance
        if self.relation == "<":
            return rel < -self.tolerance
        return rel > self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "gap": self.gap,
            "relative_gap": self.relative_gap,
            "tolerance": self.tolerance,
            "asserted": self.asserted,
            "passed": self.passed,
            "note": self.note,
        }

    def summary(self) -> str:
        mark = "✅" if self.passed else ("❌" if self.asserted else "⚠️")
        return (f"{mark} {self.name}: {self.lhs:.6g} {self.relation} {self.rhs:.6g} "
                f"(相对差 {self.relative_gap:+.2e}, 容差 {self.tolerance:g})")


@dataclass
class Report:
    """一次检查的完整记录"""

    kind: str
    inputs: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    checks: List[GapCheck] = field(default_factory=list)
    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)
    quadrature: Dict[str, Any] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)

    def check(self, name: str, lhs: float, relation: str, rhs: float, tolerance: float,
              asserted: bool = True, note: str = "", scale: Optional[float] = None) -> GapCheck:
        item = GapCheck(name, lhs, rhs, relation, tolerance, asserted, note, scale)
        self.checks.append(item)
        return item

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """记录一个阶段的耗时（只写入元数据文件）"""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - start

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.asserted)

    @property
    def failures(self) -> List[GapCheck]:
        return [c for c in self.checks if c.asserted and not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        """JSON 输出，不含耗时，保证同一配置下逐字节一致"""
        return to_builtin({
            "kind": self.kind,
            "inputs": self.inputs,
            "results": self.results,
            "checks": [c.to_dict() for c in self.checks],
            "tables": {name: frame.to_dict(orient="list") for name, frame in self.tables.items()},
            "quadrature": self.quadrature,
            "passed": self.passed,
        })


def run_reports(jobs: Sequence[Callable[[], Report]]) -> List[Report]:
    """报告级并行：提交到报告线程池，按提交顺序收集结果"""
    manager = ThreadManager()
    if manager.max_workers == 1 or len(jobs) <= 1:
        return [job() for job in jobs]
    task_ids = [manager.submit_task(job) for job in jobs]
    return [manager.get_result(task_id) for task_id in task_ids]


class BaseReportProvider(ABC):
    """报告提供者基类：一个 CLI 命令对应一个提供者"""

    @abstractmethod
    def get_reports(self, run: "RunConfig") -> List[Report]:
        """
        生成报告

        Args:
            run: 已校验的运行配置

        Returns:
            报告列表
        """
        pass

    @abstractmethod
    def supports(self) -> str:
        """
        返回此提供者对应的命令名

        Returns:
            命令名
        """
        pass
