#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Riesz 重排不等式报告
随机椭球三元组、居中球三元组和共同椭球三元组（Burchard 等号情形）
"""

from functools import partial
from typing import List

import pandas as pd

from core.fields import FieldSpec
from quadrature.quad_config import QuadConfig
from rearrange.riesz import burchard_triple, in_burchard_window, random_indicator_triple, riesz_gap
from report_providers.base_provider import BaseReportProvider, Report, run_reports

# 窗口内与窗口外的共同椭球缩放 (α, β, γ)
WINDOW_INSIDE = (1.0, 0.8, 1.2)
WINDOW_OUTSIDE = (1.0, 0.3, 2.0)


def riesz_report(n: int, random_count: int, seed: int, quad: QuadConfig, tolerance: float = 0.02) -> Report:
    """
    Riesz 不等式 lhs ≤ rhs 与等号情形

    Args:
        n: 维数，≤ 2
        random_count: 随机三元组个数，第 i 个使用 seed + i
        seed: 随机种子
        quad: 求积配置
        tolerance: 相对容差
    """
    report = Report("riesz", {"n": n, "random_count": random_count, "seed": seed})
    rows = []
    strict = 0
    with report.stage("random"):
        for i in range(random_count):
            lhs, rhs = riesz_gap(*random_indicator_triple(seed + i, n), quad)
            report.check(f"random triple {i}", lhs, "<=", rhs, tolerance)
            strict += int(lhs < rhs * (1.0 - tolerance))
            rows.append({"triple": i, "seed": seed + i, "lhs": lhs, "rhs": rhs})
    report.tables["random"] = pd.DataFrame(rows, columns=["triple", "seed", "lhs", "rhs"])
    report.results["strict_random"] = strict

    with report.stage("blobs"):
        lhs, rhs = riesz_gap(*random_indicator_triple(seed, n, kind="bump"), quad)
    report.results.update({"blob_lhs": lhs, "blob_rhs": rhs})
    report.check("off-center blobs strict", lhs, "<", rhs, tolerance, asserted=False, note="严格性只报告")

    ball = FieldSpec(kind="ball_indicator", n=n)
    with report.stage("balls"):
        lhs, rhs = riesz_gap(ball, ball, ball, quad)
    report.check("centered balls", lhs, "==", rhs, tolerance)

    for label, (alpha, beta, gamma) in (("inside", WINDOW_INSIDE), ("outside", WINDOW_OUTSIDE)):
        with report.stage(f"burchard_{label}"):
            lhs, rhs = riesz_gap(*burchard_triple(n, alpha, beta, gamma, seed=seed), quad)
        inside = in_burchard_window(alpha, beta, gamma)
        report.results[f"burchard_{label}"] = {"alpha": alpha, "beta": beta, "gamma": gamma, "lhs": lhs, "rhs": rhs}
        report.check(f"common ellipsoid triple ({label} window)", lhs, "==", rhs, tolerance, asserted=inside,
                     note="" if inside else "窗口外只报告")
    report.quadrature = {"riesz_points": quad.riesz_grid_points(n), "level_count": quad.level_count}
    return report


def custom_triple_report(fields, quad: QuadConfig, tolerance: float = 0.02) -> Report:
    """配置中给出的三元组 (f, k, g)"""
    f, k, g = fields
    report = Report("riesz_custom", {"fields": [h.to_dict() for h in fields]})
    lhs, rhs = riesz_gap(f, k, g, quad)
    report.check("custom triple", lhs, "<=", rhs, tolerance)
    return report


class RieszReportProvider(BaseReportProvider):
    """riesz 命令：随机与等号情形的报告；配置恰好给出三个函数时另加一份"""

    def supports(self) -> str:
        return "riesz"

    def get_reports(self, run) -> List[Report]:
        tol = run.tol("riesz")
        jobs = [partial(riesz_report, run.n, run.random_count, run.seed, run.quad, tol)]
        if len(run.fields) == 3:
            jobs.append(partial(custom_triple_report, run.fields, run.quad, tol))
        return run_reports(jobs)
