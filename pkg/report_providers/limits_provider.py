#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
s → 1⁻ 极限扫描
p(1−s)·E_K(f, s) 趋于 n·Ṽ_{−p}(K, Π*_p f)，正部版本趋于 n·Ṽ_{−p}(K, Π⁺_p f)；K 为球时目标等于 α_{n,p} λ^{n+p} ∫|∇f|^p
"""

from functools import partial
from typing import List, Sequence

import numpy as np
import pandas as pd

from core.errors import FieldError
from core.fields import BaseField
from core.params import alpha_np, validate_params
from projbody.classical import GradientSampler, build_classical_body, check_s_list, limit_scaling_report
from projbody.energy import anisotropic_energy, classical_limit_energy, moment_body_energy
from projbody.frac_body import build_frac_body, variant_sign
from quadrature.quad_config import QuadConfig
from report_providers.base_provider import BaseReportProvider, Report, run_reports
from starbody.star_body import StarBody, ball, dual_mixed_volume, is_dilate, volume_power

FINAL_RESIDUAL = 0.10
HOMOGENEITY_SCALE = 1.5
LIMIT_VARIANTS = ("sym", "plus")


def bbm_limit_report(f: BaseField, K: StarBody, p: float, s_list: Sequence[float], quad: QuadConfig,
                     tolerance: float = 0.02, final_residual: float = FINAL_RESIDUAL,
                     variant: str = "sym") -> Report:
    """
    极限扫描报告

    Args:
        f: 光滑函数
        K: 星形体（其网格即计算投影体的网格）
        p: 指数
        s_list: 严格递增的 s 序列
        quad: 求积配置
        tolerance: 目标值交叉检验的容差
        final_residual: 最后一个 s 的相对残差上限
        variant: sym，或非对称的 plus / minus（分数阶与经典两边取同一版本）

    Raises:
        FieldError: f 不光滑
        ParamError: s_list 不递增或参数无效
    """
    if not f.is_smooth:
        raise FieldError(f"{f.describe()} 不光滑，没有梯度能量极限")
    variant_sign(variant)
    values = check_s_list(s_list)
    n = f.n
    grid = K.grid
    report = Report("limits", {"field": f.to_dict(), "p": p, "s_list": values, "body": K.to_dict(),
                               "variant": variant})

    with report.stage("targets"):
        classical = build_classical_body(f, p, grid, variant, quad).body
        target = n * dual_mixed_volume(K, classical, -p)
    report.results["target"] = target
    ratio = homogeneity_ratio(f, p, quad, HOMOGENEITY_SCALE, K, variant)
    report.results["homogeneity_ratio"] = ratio
    report.check("target scales as lambda^(n+p)", ratio, "==", HOMOGENEITY_SCALE ** (n + p), tolerance)

    if variant == "sym":
        # 矩体与 α_{n,p} 两条路线只对对称版本成立
        with report.stage("moment_body"):
            moment = moment_body_energy(f, K, p, quad)
        report.results["moment_body_target"] = moment
        report.check("moment body route == dual mixed volume route", moment, "==", target, tolerance)
        if is_dilate(K, ball(grid)):
            radius = float(np.mean(K.rho))
            sampler = GradientSampler(f, quad)
            gradient_energy = float(np.dot(sampler.weights, np.linalg.norm(sampler.grads, axis=1) ** p))
            closed = alpha_np(n, p) * radius ** (n + p) * gradient_energy
            report.results.update({"gradient_energy": gradient_energy, "alpha_target": closed})
            report.check("alpha_{n,p} * |grad f|_p^p target", closed, "==", target, tolerance)

    classical_volume = volume_power(classical, -p / n)
    rows = []
    with report.stage("sweep"):
        for s in values:
            params = validate_params(n, s, p, sobolev=False)
            body = build_frac_body(f, params, grid, variant, quad).body
            scaled = p * (1.0 - s) * anisotropic_energy(f, K, params, quad, variant, body=body)
            scaled_volume = p * (1.0 - s) * volume_power(body, -params.ps / n)
            rows.append({
                "s": s,
                "scaled_energy": scaled,
                "target": target,
                "residual": abs(scaled - target) / target,
                "scaled_volume_term": scaled_volume,
                "classical_volume_term": classical_volume,
                "volume_residual": abs(scaled_volume - classical_volume) / classical_volume,
            })
    frame = pd.DataFrame(rows)
    report.tables["sweep"] = frame

    residuals = frame["residual"].to_numpy()
    for (s0, r0), (s1, r1) in zip(zip(values, residuals), zip(values[1:], residuals[1:])):
        report.check(f"residual decreases ({s0:g} -> {s1:g})", r1, "<", r0, 0.0)
    report.check(f"final residual <= {final_residual:g}", residuals[-1], "<=", final_residual, 0.0, scale=1.0)
    report.results["final_residual"] = float(residuals[-1])

    with report.stage("gauge_sweep"):
        gauge_rows = limit_scaling_report(f, grid.nodes[0], p, values, quad, variant=variant)
    report.tables["gauge_scaling"] = pd.DataFrame(gauge_rows)
    report.quadrature = {"sphere": grid.to_dict(), "t_grid": quad.tgrid().to_dict()}
    return report


def homogeneity_ratio(f: BaseField, p: float, quad: QuadConfig, scale: float, K: StarBody,
                      variant: str = "sym") -> float:
    """目标值在 K ↦ λK 下的比值，应为 λ^{n+p}"""
    return (classical_limit_energy(f, K.dilate(scale), p, quad, variant)
            / classical_limit_energy(f, K, p, quad, variant))


class LimitReportProvider(BaseReportProvider):
    """limits 命令：每个光滑函数一份对称与一份正部的极限扫描"""

    def supports(self) -> str:
        return "limits"

    def get_reports(self, run) -> List[Report]:
        K = run.body_on(run.quad.sphere(run.n))
        final = run.tolerances.get("limits_final", FINAL_RESIDUAL)
        return run_reports([partial(bbm_limit_report, f, K, run.params.p, run.s_list, run.quad, run.tol("limits"),
                                    final, variant)
                            for f in run.fields for variant in LIMIT_VARIANTS])
