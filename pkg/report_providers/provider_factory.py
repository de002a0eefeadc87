#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from typing import Dict, List, Type

from core.errors import ConfigError
from report_providers.base_provider import BaseReportProvider


class ReportProviderFactory:
    """报告提供者工厂，按命令名管理和获取报告提供者"""

    def __init__(self):
        """初始化报告提供者工厂"""
        self.providers: Dict[str, BaseReportProvider] = {}

    def register_provider(self, provider_class: Type[BaseReportProvider]) -> None:
        """
        注册报告提供者

        Args:
            provider_class: 报告提供者类
        """
        provider = provider_class()
        self.providers[provider.supports()] = provider

    def get_provider(self, command: str) -> BaseReportProvider:
        """
        获取命令对应的报告提供者

        Args:
            command: 命令名

        Returns:
            报告提供者实例

        Raises:
            ConfigError: 命令未注册
        """
        if command not in self.providers:
            raise ConfigError(f"未注册的命令: {command}，可选 {', '.join(self.get_registered_providers())}")
        return self.providers[command]

    def get_registered_providers(self) -> List[str]:
        """
        获取所有注册的命令名

        Returns:
            命令名列表
        """
        return list(self.providers.keys())
