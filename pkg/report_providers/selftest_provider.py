#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
自检：只用闭式结果的数值检验
"""

import math
from typing import List

from scipy.special import gamma

from core.fields import FieldSpec
from core.params import FracParams, alpha_np, alpha_np_exact, omega_n
from projbody.energy import fractional_seminorm
from projbody.frac_body import frac_gauge
from quadrature.quad_config import QuadConfig
from quadrature.t_integral import one_dim_limit, t_integral
from report_providers.base_provider import BaseReportProvider, Report
from starbody.star_body import ball, dual_mixed_volume, random_star_body, volume


def gaussian_energy_1d(s: float) -> float:
    """n = 1, p = 2, f = e^{−x²} 时关于 B¹ 的能量 2√(π/2)·2^{−s}Γ(1−s)/s"""
    return 2.0 * math.sqrt(math.pi / 2.0) * 2.0 ** (-s) * gamma(1.0 - s) / s


def selftest_report(quad: QuadConfig) -> Report:
    """闭式检验：指示函数规范、球体积、α_{n,p}、t 积分、一维高斯能量和一维极限工具"""
    report = Report("selftest", {"quadrature": quad.to_dict()})

    with report.stage("indicator_gauge"):
        unit_interval = FieldSpec(kind="ball_indicator", n=1, radius=0.5, center=(0.5,))
        params = FracParams(1, 0.25, 2.0)
        value = frac_gauge(unit_interval, [1.0], params, quad) ** params.ps
    report.check("gauge^ps of indicator [0,1] (ps = 1/2)", value, "==", 8.0, 5.0e-3)

    with report.stage("ball_volume"):
        for n in (1, 2, 3):
            radius = 1.5
            report.check(f"vol(1.5 B^{n})", volume(ball(quad.sphere(n), radius)), "==",
                         omega_n(n) * radius ** n, 1.0e-10)

    with report.stage("alpha"):
        for n in (2, 3):
            for p in (1.5, 2.0, 3.0):
                report.check(f"alpha_({n},{p:g})", alpha_np(n, p), "==", alpha_np_exact(n, p), 1.0e-3)

    with report.stage("t_integral"):
        value = t_integral(lambda t: min(t, 1.0) ** 2, FracParams(1, 0.25, 2.0), quad.tgrid())
    report.check("t-integral of min(t,1)^2 (ps = 1/2)", value, "==", 8.0 / 3.0, 1.0e-4)

    with report.stage("gaussian_energy"):
        s = 0.25
        energy = fractional_seminorm(FieldSpec(kind="gaussian", n=1), FracParams(1, s, 2.0), quad)
    report.check("1-D Gaussian energy (s = 1/4, p = 2)", energy, "==", gaussian_energy_1d(s), 1.0e-3)

    with report.stage("one_dim_limit"):
        value = one_dim_limit(lambda t: math.exp(-t), 0.9, quad.tgrid())
    report.check("(1-s) int t^-s e^-t dt = Gamma(2-s)", value, "==", gamma(1.1), 1.0e-3)

    with report.stage("dual_mixed_volume"):
        K = random_star_body(7, 2, quad.sphere(2))
        report.check("V~_alpha(K, K) == vol(K)", dual_mixed_volume(K, K, 0.5), "==", volume(K), 1.0e-12)
    return report


class SelftestReportProvider(BaseReportProvider):
    """selftest 命令：闭式检验，容差固定"""

    def supports(self) -> str:
        return "selftest"

    def get_reports(self, run) -> List[Report]:
        return [selftest_report(run.quad)]
