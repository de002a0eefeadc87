#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
线程管理工具
提供节点级并行映射和报告级异步任务两个线程池
"""

import itertools
import logging
import os
import threading
from concurrent.futures import Future, ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional

import psutil

logger = logging.getLogger(__name__)

THREADS_ENV = "FRACBODY_THREADS"


def default_thread_count() -> int:
    """FRACBODY_THREADS 环境变量优先，否则取逻辑 CPU 数"""
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            count = int(env)
            if count >= 1:
                return count
        except ValueError:
            pass
        logger.warning("忽略无效的 %s=%r", THREADS_ENV, env)
    return psutil.cpu_count(logical=True) or 1


class ThreadManager:
    """线程管理器（单例），节点级计算和报告级任务分别使用独立线程池，避免嵌套等待造成死锁"""

    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        """单例模式，确保只有一个线程管理器实例"""
        with cls._lock:
            if cls._instance is None:
                cls._instance = super(ThreadManager, cls).__new__(cls)
                cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        """初始化线程管理器"""
        if self._initialized:
            return

        self.max_workers = default_thread_count()
        # 节点级线程池：方向上的规范函数计算
        self.executor = ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix="FracNode")
        # 报告级线程池：测试矩阵中的各个报告
        self.report_executor = ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix="FracReport")

        # 任务结果缓存
        self.results: Dict[str, Future] = {}
        self._counter = itertools.count()

        self._initialized = True

    def configure(self, max_workers: Optional[int]) -> None:
        """
        调整线程数上限

        Args:
            max_workers: 线程数，None 时保持不变
        """
        if max_workers is None or max_workers == self.max_workers:
            return
        if max_workers < 1:
            raise ValueError(f"线程数必须为正整数，当前 {max_workers}")
        self.executor.shutdown(wait=True)
        self.report_executor.shutdown(wait=True)
        self.max_workers = int(max_workers)
        self.executor = ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix="FracNode")
        self.report_executor = ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix="FracReport")
        logger.debug("线程数调整为 %d", self.max_workers)

    def map_ordered(self, func: Callable[[Any], Any], items: Iterable[Any]) -> List[Any]:
        """
        并行执行并按输入顺序返回结果；任一任务的异常会原样抛出

        Args:
            func: 单参数函数
            items: 输入序列
        """
        items = list(items)
        if self.max_workers == 1 or len(items) <= 1:
            return [func(item) for item in items]
        return list(self.executor.map(func, items))

    def submit_task(self, func: Callable, *args,
                    task_id: Optional[str] = None,
                    **kwargs) -> str:
        """
        提交报告级任务

        Args:
            func: 要执行的函数
            *args: 函数的位置参数
            task_id: 任务ID，如果为None则自动生成
            **kwargs: 函数的关键字参数

        Returns:
            任务ID
        """
        if task_id is None:
            task_id = f"task_{next(self._counter)}"
        self.results[task_id] = self.report_executor.submit(func, *args, **kwargs)
        return task_id

    def get_result(self, task_id: str, timeout: Optional[float] = None) -> Any:
        """
        等待并获取任务结果，任务内的异常会重新抛出

        Args:
            task_id: 任务ID
            timeout: 等待超时时间（秒）
        """
        future = self.results.pop(task_id)
        return future.result(timeout=timeout)

    def shutdown(self):
        """关闭线程管理器"""
        self.executor.shutdown(wait=True)
        self.report_executor.shutdown(wait=True)
        with ThreadManager._lock:
            ThreadManager._instance = None
