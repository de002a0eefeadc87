#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
工具包
线程管理（thread_manager）与报告输出（report_writer）；
report_writer 依赖 report_providers，这里不提前导入
"""

from utils.thread_manager import ThreadManager

__all__ = ['ThreadManager']
