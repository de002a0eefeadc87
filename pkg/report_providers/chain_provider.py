#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Sobolev 不等式链
A = ‖f‖_{np/(n−ps)}^p，B = n ω_n^{(n+ps)/n} vol(Π*f)^{−ps/n}，C = 欧氏分数阶半范数；
只断言与常数无关的 B ≤ C，A 的比值仅供查看
"""

import logging
from functools import partial
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from core.errors import FieldError
from core.fields import BaseField, random_sl_shear
from core.params import FracParams, omega_n
from projbody.energy import anisotropic_energy, fractional_seminorm
from projbody.frac_body import build_frac_body
from quadrature.box_quad import lp_norm
from quadrature.quad_config import QuadConfig
from report_providers.base_provider import BaseReportProvider, Report, run_reports
from starbody.star_body import ball, linear_image, volume_power

logger = logging.getLogger(__name__)

# 常号函数 |f| 与 f 的积分完全相同
SAME_INTEGRAND_TOL = 1.0e-8
SHEAR_COLUMNS = ["shear", "seed", "B", "C", "B_ratio", "C_ratio", "body_error"]


def _chain_terms(f: BaseField, params: FracParams, quad: QuadConfig, variant: str = "sym") -> Dict[str, Any]:
    """B 与 C（variant 为 plus 时给出 B⁺ 与 C⁺，均带因子 2），以及投影体本身"""
    n, ps = params.n, params.ps
    grid = quad.sphere(n)
    body = build_frac_body(f, params, grid, variant, quad).body
    factor = 1.0 if variant == "sym" else 2.0
    b_value = factor * n * omega_n(n) ** ((n + ps) / n) * volume_power(body, -ps / n)
    c_value = factor * anisotropic_energy(f, ball(grid), params, quad, variant, body=body)
    return {"B": b_value, "C": c_value, "body": body}


def sobolev_chain_report(f: BaseField, params: FracParams, quad: QuadConfig, tolerance: float = 0.02) -> Report:
    """
    Sobolev 链 A, B, C 以及非对称版本 B⁺, C⁺

    Args:
        f: 非零函数
        params: (n, s, p)，要求 ps < n
        quad: 求积配置
        tolerance: B ≤ C 等检查的相对容差
    """
    report = Report("chain", {"field": f.to_dict(), "params": params.to_dict()})
    with report.stage("A"):
        a_value = lp_norm(f, params.sobolev_exp, quad.box_for(f)) ** params.p
    with report.stage("sym"):
        terms = _chain_terms(f, params, quad)
    b_value, c_value = terms["B"], terms["C"]
    report.results.update({"A": a_value, "B": b_value, "C": c_value,
                           "A_over_B": a_value / b_value, "A_over_C": a_value / c_value})
    report.check("B <= C", b_value, "<=", c_value, tolerance)
    if f.is_radial:
        report.check("B == C (radial)", b_value, "==", c_value, tolerance)

    if f.is_nonnegative:
        with report.stage("plus"):
            plus = _chain_terms(f, params, quad, "plus")
        report.results.update({"B_plus": plus["B"], "C_plus": plus["C"]})
        report.check("B+ <= B", plus["B"], "<=", b_value, tolerance)
        report.check("B+ <= C+", plus["B"], "<=", plus["C"], tolerance)
        report.check("C+ == C", plus["C"], "==", c_value, tolerance)
        if f.is_even:
            report.check("B+ == B (even)", plus["B"], "==", b_value, tolerance)
    report.quadrature = {"sphere": quad.sphere(params.n).to_dict(), "box": quad.box_for(f).to_dict()}
    logger.debug("chain %s: A=%.6g B=%.6g C=%.6g", f.describe(), a_value, b_value, c_value)
    return report


def abs_value_reduction_check(f: BaseField, params: FracParams, quad: QuadConfig,
                              tolerance: float = 0.02) -> Report:
    """
    |f| 的半范数不超过 f 的半范数，常号时相等

    Args:
        f: 可变号的函数
    """
    report = Report("abs_reduction", {"field": f.to_dict(), "params": params.to_dict()})
    with report.stage("seminorms"):
        reduced = fractional_seminorm(f.absolute(), params, quad)
        original = fractional_seminorm(f, params, quad)
    report.results.update({"seminorm_abs": reduced, "seminorm": original})
    report.check("seminorm(|f|) <= seminorm(f)", reduced, "<=", original, tolerance)
    if f.is_nonnegative:
        report.check("seminorm(|f|) == seminorm(f) (constant sign)", reduced, "==", original, SAME_INTEGRAND_TOL)
    else:
        report.check("seminorm(|f|) < seminorm(f) (sign change)", reduced, "<", original, tolerance,
                     asserted=False, note="严格性只报告")
    try:
        negated = f.negated()
    except FieldError:
        negated = None
    if negated is not None:
        flipped = fractional_seminorm(negated, params, quad)
        report.results["seminorm_negated"] = flipped
        report.check("seminorm(-f) == seminorm(f)", flipped, "==", original, SAME_INTEGRAND_TOL)
    return report


def affine_invariance_report(f: BaseField, params: FracParams, shear_count: int, seed: int,
                             quad: QuadConfig, tolerance: float = 0.02) -> Report:
    """
    B 在 SL(n) 剪切下不变，而欧氏半范数 C 变大；
    投影体逐节点满足 Π*(f∘φ⁻¹) = φ Π*f

    Args:
        f: 函数（径向时 C 的增大有保证）
        shear_count: 随机剪切个数
        seed: 第 i 个剪切使用 seed + i
    """
    if params.n < 2:
        raise FieldError("n = 1 时 SL(1) 只有恒等映射，仿射不变性检查无意义")
    report = Report("affine_invariance", {"field": f.to_dict(), "params": params.to_dict(),
                                          "shear_count": shear_count, "seed": seed})
    with report.stage("base"):
        base = _chain_terms(f, params, quad)
    rows: List[Dict[str, Any]] = []
    increases = 0
    for i in range(shear_count):
        phi = random_sl_shear(params.n, seed + i)
        with report.stage("shears"):
            terms = _chain_terms(f.composed_with(phi), params, quad)
        grew = terms["C"] > base["C"]
        increases += int(grew)
        report.check(f"B invariant (shear {i})", terms["B"], "==", base["B"], tolerance)
        image = linear_image(phi, base["body"])
        covariance = float(np.max(np.abs(terms["body"].rho / image.rho - 1.0)))
        report.check(f"body covariant (shear {i})", covariance, "<=", 0.0, tolerance, scale=1.0)
        rows.append({"shear": i, "seed": seed + i, "B": terms["B"], "C": terms["C"],
                     "B_ratio": terms["B"] / base["B"], "C_ratio": terms["C"] / base["C"],
                     "body_error": covariance})
        report.results[f"shear_{i}_matrix"] = phi.matrix.tolist()
    report.results.update({"B": base["B"], "C": base["C"], "C_increases": increases})
    report.check("C increases under shears", increases, ">=", max(shear_count - 1, 0), 0.0, scale=1.0)
    report.tables["shears"] = pd.DataFrame(rows, columns=SHEAR_COLUMNS)
    return report


class ChainReportProvider(BaseReportProvider):
    """chain 命令：每个函数一份 Sobolev 链和 |f| 约化报告，外加一份仿射不变性报告"""

    def supports(self) -> str:
        return "chain"

    def get_reports(self, run) -> List[Report]:
        tol = run.tol("chain")
        jobs = []
        for f in run.fields:
            jobs.append(partial(sobolev_chain_report, f, run.params, run.quad, tol))
            jobs.append(partial(abs_value_reduction_check, f, run.params, run.quad, tol))
        if run.shear_count > 0 and run.n >= 2:
            jobs.append(partial(affine_invariance_report, run.primary_field, run.params, run.shear_count, run.seed,
                                run.quad, run.tol("invariance")))
        return run_reports(jobs)
