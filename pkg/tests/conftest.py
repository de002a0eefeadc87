#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
测试公共设置：把仓库根目录加入 sys.path，并提供两档求积配置
"""

import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from quadrature.quad_config import QuadConfig  # noqa: E402


@pytest.fixture(scope="session")
def quad() -> QuadConfig:
    """默认精度"""
    return QuadConfig()


@pytest.fixture(scope="session")
def small_quad() -> QuadConfig:
    """快速检验用的粗网格"""
    return QuadConfig(sphere_level=4, box_points=32, t_points=120, level_points=96,
                      level_count=80, oracle_points=40, riesz_points=40)
