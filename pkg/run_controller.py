#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
运行控制器
负责协调配置、线程池、报告提供者和报告输出，是命令行程序的核心
"""

import logging
import os
import time
from typing import Dict, List, Optional, Sequence

from config_manager import ConfigManager, RunConfig
from core.errors import ConfigError, FracBodyError, ParamError
from report_providers import create_provider_factory
from report_providers.base_provider import Report
from utils.report_writer import ReportWriter
from utils.thread_manager import ThreadManager

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_CONFIG = 2
EXIT_COMPUTATION = 3


def exit_code_for(error: BaseException) -> int:
    """异常到退出码的映射：配置与参数错误为 2，其余业务错误与 I/O 错误为 3"""
    if isinstance(error, (ConfigError, ParamError)):
        return EXIT_CONFIG
    return EXIT_COMPUTATION


class RunController:
    """运行控制器，协调各模块完成一次命令"""

    def __init__(self, config_path: Optional[str] = None, overrides: Sequence[str] = (), quiet: bool = False):
        """
        初始化控制器

        Args:
            config_path: 配置文件路径，None 时只使用默认配置
            overrides: key=value 形式的覆盖项，按顺序应用
            quiet: 不打印阶段与检查摘要
        """
        self.config_manager = ConfigManager(config_path)
        for assignment in overrides:
            self.config_manager.apply_override(assignment)

        # 初始化报告提供者工厂
        self.provider_factory = create_provider_factory()
        self.thread_manager = ThreadManager()
        self.quiet = quiet
        self.timings: Dict[str, float] = {}
        self.reports: List[Report] = []
        self.written: List[str] = []

    def _say(self, message: str) -> None:
        if not self.quiet:
            print(message)

    def prepare(self) -> RunConfig:
        """校验配置并按线程数设置调整线程池"""
        run = self.config_manager.to_run_config()
        self.thread_manager.configure(run.threads)
        return run

    def execute(self, run: RunConfig) -> List[Report]:
        """计算报告并写出文件"""
        self._say(f"🚀 {run.command}: n={run.n}, s={run.params.s:g}, p={run.params.p:g}, "
                  f"{len(run.fields)} 个函数, {self.thread_manager.max_workers} 个线程")
        provider = self.provider_factory.get_provider(run.command)

        start = time.perf_counter()
        self.reports = provider.get_reports(run)
        self.timings["reports"] = time.perf_counter() - start
        logger.debug("%s 共 %d 份报告，用时 %.2fs", run.command, len(self.reports), self.timings["reports"])

        for index, report in enumerate(self.reports):
            self._say(f"📊 [{index:02d}] {report.kind}")
            for item in report.checks:
                self._say(f"   {item.summary()}")

        writer = ReportWriter(run.output_dir, run.formats)
        self.written = writer.write(run.command, run.config_hash, run.document, self.reports, self.timings)
        # 合并后的配置，可用 --config 原样重跑
        config_path = os.path.join(run.output_dir, f"{run.command}-{run.config_hash}.config.json")
        self.written.append(self.config_manager.save_config(config_path))
        self._say(f"📁 结果已写入 {run.output_dir}（{len(self.written)} 个文件，配置哈希 {run.config_hash}）")
        return self.reports

    def run(self) -> int:
        """
        执行一次命令

        Returns:
            退出码：0 全部通过，1 有断言失败，2 配置错误，3 计算错误
        """
        try:
            run = self.prepare()
            reports = self.execute(run)
        except FracBodyError as e:
            code = exit_code_for(e)
            self._say(f"❌ {'配置错误' if code == EXIT_CONFIG else '计算错误'}: {e}")
            logger.debug("运行失败", exc_info=True)
            return code
        except OSError as e:
            self._say(f"❌ 写出结果失败: {e}")
            return EXIT_COMPUTATION

        failures = [item for report in reports for item in report.failures]
        if failures:
            self._say(f"❌ {len(failures)} 项断言未通过")
            return EXIT_ASSERTION
        self._say("✅ 全部断言通过")
        return EXIT_OK
