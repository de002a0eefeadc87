#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
报告提供者包
每个 CLI 命令对应一个报告提供者
"""

from report_providers.asym_provider import AsymReportProvider
from report_providers.base_provider import BaseReportProvider, GapCheck, Report
from report_providers.chain_provider import ChainReportProvider
from report_providers.limits_provider import LimitReportProvider
from report_providers.optimal_provider import OptimalBodyReportProvider
from report_providers.projbody_provider import ProjBodyReportProvider
from report_providers.provider_factory import ReportProviderFactory
from report_providers.ps_provider import PolyaSzegoReportProvider
from report_providers.riesz_provider import RieszReportProvider
from report_providers.selftest_provider import SelftestReportProvider


# 创建并配置默认的报告提供者工厂
def create_provider_factory():
    """创建并注册所有报告提供者"""
    factory = ReportProviderFactory()
    factory.register_provider(ProjBodyReportProvider)
    factory.register_provider(ChainReportProvider)
    factory.register_provider(PolyaSzegoReportProvider)
    factory.register_provider(AsymReportProvider)
    factory.register_provider(OptimalBodyReportProvider)
    factory.register_provider(LimitReportProvider)
    factory.register_provider(RieszReportProvider)
    factory.register_provider(SelftestReportProvider)
    return factory


__all__ = [
    'BaseReportProvider',
    'GapCheck',
    'Report',
    'ReportProviderFactory',
    'ProjBodyReportProvider',
    'ChainReportProvider',
    'PolyaSzegoReportProvider',
    'AsymReportProvider',
    'OptimalBodyReportProvider',
    'LimitReportProvider',
    'RieszReportProvider',
    'SelftestReportProvider',
    'create_provider_factory',
]
