#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
投影体报告：逐节点计算（不使用对称性捷径），检查对径关系和拟三角不等式
"""

from functools import partial
from typing import List

import numpy as np

from core.fields import BaseField
from core.params import FracParams
from projbody.frac_body import build_frac_body, quasi_triangle_gap
from quadrature.quad_config import QuadConfig
from report_providers.base_provider import BaseReportProvider, Report, run_reports
from starbody.star_body import ball_radius_spread, volume, volume_power

OPPOSITE = {"plus": "minus", "minus": "plus"}


def projbody_report(f: BaseField, params: FracParams, variant: str, quad: QuadConfig,
                    tolerance: float = 0.02) -> Report:
    """
    构造 Π*_{s,p}f（或 Π⁺ / Π⁻）并做结构性检查

    对称版本应关于原点对称；非对称版本满足 ρ⁺(ξ) = ρ⁻(−ξ)
    """
    n, ps = params.n, params.ps
    grid = quad.sphere(n)
    anti = grid.antipodes
    report = Report("projbody", {"field": f.to_dict(), "params": params.to_dict(), "variant": variant})
    with report.stage("body"):
        result = build_frac_body(f, params, grid, variant, quad, symmetry=False)
    body = result.body
    report.results.update({"volume": volume(body), "volume_term": volume_power(body, -ps / n),
                           "rho_min": float(body.rho.min()), "rho_max": float(body.rho.max())})

    if variant == "sym":
        mirror = body.rho[anti]
        label = "origin symmetry"
    else:
        with report.stage("opposite"):
            opposite = build_frac_body(f, params, grid, OPPOSITE[variant], quad, symmetry=False)
        mirror = opposite.body.rho[anti]
        label = f"rho_{variant}(xi) == rho_{OPPOSITE[variant]}(-xi)"
    report.check(label, float(np.max(np.abs(body.rho / mirror - 1.0))), "<=", 0.0, tolerance, scale=1.0)
    if f.is_radial:
        spread = ball_radius_spread(body)
        report.results["radial_spread"] = spread
        report.check("radial field gives a ball", spread, "<=", 0.0, tolerance, scale=1.0)

    xi = grid.nodes[0]
    eta = grid.nodes[grid.size // 4] if n > 1 else grid.nodes[0]
    with report.stage("quasi_triangle"):
        lhs, rhs = quasi_triangle_gap(f, xi, eta, params, quad, variant)
    report.check("quasi triangle inequality", lhs, "<=", rhs, tolerance)

    report.tables["body"] = result.to_frame()
    report.quadrature = result.quadrature
    report.timings["nodes_total"] = float(np.sum(result.elapsed))
    return report


class ProjBodyReportProvider(BaseReportProvider):
    """projbody 命令：每个函数一份投影体报告"""

    def supports(self) -> str:
        return "projbody"

    def get_reports(self, run) -> List[Report]:
        return run_reports([partial(projbody_report, f, run.params, run.variant, run.quad, run.tol("projbody"))
                            for f in run.fields])
