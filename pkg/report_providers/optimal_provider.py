#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
最优分数阶 Sobolev 体
体积为 ω_n 的星形体中，使 f 的各向异性能量最小的是 Π*_{s,p}f 的伸缩
"""

from functools import partial
from typing import List

import numpy as np
import pandas as pd

from core.fields import BaseField
from core.params import FracParams
from projbody.frac_body import build_frac_body
from quadrature.quad_config import QuadConfig
from report_providers.base_provider import BaseReportProvider, Report, run_reports
from starbody.star_body import ball, dual_mixed_volume, random_star_body, unit_volume_normalized

# 离散 Hölder 不等式在网格上精确成立，只留舍入余量
MINIMALITY_SLACK = 1.0e-10


def optimal_body_report(f: BaseField, params: FracParams, candidate_count: int, seed: int,
                        quad: QuadConfig, tolerance: float = 0.02) -> Report:
    """
    Π̂ = 体积归一化的 Π*_{s,p}f 与随机候选体的能量比较

    Args:
        f: 非零函数
        params: (n, s, p)
        candidate_count: 候选体个数，第 i 个使用 seed + i
        seed: 随机种子
        quad: 求积配置
        tolerance: 径向函数时球候选的等号容差
    """
    n, ps = params.n, params.ps
    grid = quad.sphere(n)
    report = Report("optimal", {"field": f.to_dict(), "params": params.to_dict(),
                                "candidate_count": candidate_count, "seed": seed})
    with report.stage("projection_body"):
        result = build_frac_body(f, params, grid, "sym", quad)
    body = result.body
    optimal = unit_volume_normalized(body)

    def energy(L) -> float:
        return n * dual_mixed_volume(L, body, -ps)

    best = energy(optimal)
    with report.stage("candidates"):
        energies = np.array([energy(unit_volume_normalized(random_star_body(seed + i, n, grid)))
                             for i in range(candidate_count)])
    margins = energies / best - 1.0
    violations = int(np.count_nonzero(energies < best * (1.0 - MINIMALITY_SLACK)))

    report.results.update({"optimal_energy": best, "violations": violations})
    if candidate_count:
        report.results.update({"margin_min": float(margins.min()), "margin_median": float(np.median(margins)),
                               "margin_max": float(margins.max())})
        report.check("optimal energy <= min candidate energy", best, "<=", float(energies.min()), MINIMALITY_SLACK)
    report.check("no violations", violations, "<=", 0, 0.0, scale=1.0)
    report.check("self candidate", energy(optimal), "==", best, MINIMALITY_SLACK)
    if f.is_radial:
        report.check("ball candidate equals optimum (radial f)", energy(ball(grid)), "==", best, tolerance)
    report.tables["candidates"] = pd.DataFrame({"candidate": np.arange(candidate_count),
                                                "seed": seed + np.arange(candidate_count),
                                                "energy": energies, "margin": margins})
    report.tables["optimal_body"] = optimal.to_frame()
    report.quadrature = result.quadrature
    return report


class OptimalBodyReportProvider(BaseReportProvider):
    """optimal 命令：每个函数一份最优体报告"""

    def supports(self) -> str:
        return "optimal"

    def get_reports(self, run) -> List[Report]:
        return run_reports([partial(optimal_body_report, f, run.params, run.candidate_count, run.seed, run.quad,
                                    run.tol("optimal")) for f in run.fields])
