#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
非对称加强
Π*f 是 Π⁺f 与 Π⁻f 的 (−ps) 径向和，对偶 Brunn–Minkowski 给出 vol(Π*f)^{−ps/n} ≥ vol(Π⁺f)^{−ps/n} + vol(Π⁻f)^{−ps/n}
"""

from functools import partial
from typing import List

import numpy as np

from core.errors import FieldError
from core.fields import BaseField
from core.params import FracParams
from projbody.frac_body import build_frac_body
from quadrature.quad_config import QuadConfig
from report_providers.base_provider import BaseReportProvider, Report, run_reports
from starbody.star_body import radial_sum, relative_rho_distance, volume_power

# 节点上的规范函数可加性只差舍入误差
SUM_IDENTITY_TOL = 1.0e-6


def asym_strengthening_report(f: BaseField, params: FracParams, quad: QuadConfig, tolerance: float = 0.02) -> Report:
    """
    径向和恒等式（逐节点）与对偶 Brunn–Minkowski 体积不等式

    Args:
        f: 非负非零函数
        params: (n, s, p)
        quad: 求积配置
        tolerance: 体积不等式及偶函数等号的容差

    Raises:
        FieldError: f 不是非负函数
    """
    if not f.is_nonnegative:
        raise FieldError("非对称加强检查要求函数非负")
    n, ps = params.n, params.ps
    grid = quad.sphere(n)
    report = Report("asym", {"field": f.to_dict(), "params": params.to_dict()})
    results = {}
    for variant in ("sym", "plus", "minus"):
        # 逐节点恒等式要求三个版本在每个节点上都独立计算
        with report.stage(variant):
            results[variant] = build_frac_body(f, params, grid, variant, quad, symmetry=False)
    sym, plus, minus = (results[v].body for v in ("sym", "plus", "minus"))

    powers = {v: results[v].gauges ** ps for v in results}
    nodewise = np.abs(powers["sym"] - powers["plus"] - powers["minus"]) / powers["sym"]
    combined = radial_sum(plus, minus, -ps)
    report.results["max_nodewise_sum_error"] = float(nodewise.max())
    report.check("radial sum identity", relative_rho_distance(combined, sym), "<=", 0.0, SUM_IDENTITY_TOL,
                 note="max |ρ_sum/ρ_sym − 1|", scale=1.0)

    lhs = volume_power(sym, -ps / n)
    v_plus = volume_power(plus, -ps / n)
    v_minus = volume_power(minus, -ps / n)
    report.results.update({"sym_term": lhs, "plus_term": v_plus, "minus_term": v_minus})
    report.check("dual Brunn-Minkowski", lhs, ">=", v_plus + v_minus, tolerance)
    report.check("vol(Pi+) == vol(Pi-)", v_plus, "==", v_minus, tolerance)
    if f.is_even:
        report.check("equality for even f", lhs, "==", v_plus + v_minus, tolerance)
    else:
        report.check("strict gap for non-even f", lhs, ">", v_plus + v_minus, tolerance,
                     asserted=False, note="严格性只报告")

    frame = sym.to_frame()
    for v in ("sym", "plus", "minus"):
        frame[f"gauge_{v}"] = results[v].gauges
    report.tables["bodies"] = frame
    report.quadrature = results["sym"].quadrature
    return report


class AsymReportProvider(BaseReportProvider):
    """asym 命令：每个函数一份非对称加强报告"""

    def supports(self) -> str:
        return "asym"

    def get_reports(self, run) -> List[Report]:
        return run_reports([partial(asym_strengthening_report, f, run.params, run.quad, run.tol("asym"))
                            for f in run.fields])
